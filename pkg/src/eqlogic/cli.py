"""Command-line frontend.

Thin client over the shared operations layer: each subcommand reads its
input files, builds the same request a service client would send, and
renders the resulting report.  By default the operation runs in-process;
with --server URL the request is POSTed to a running service instead and
the response rendered identically.

Exit codes: 0 for success (for satisfies and sound, an affirmative
answer), 1 for a proof-level failure or negative answer, 2 for parse or
validation errors.  Reports go to stdout, error diagnostics to stderr;
--json writes the full payload to stdout instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reports

DEFAULT_BUDGET = 10_000_000


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="eqlogic",
        description="Workbench for multi-sorted equational logic.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit the JSON payload on stdout")
        p.add_argument("--server", metavar="URL", help="send the request to a running service")

    p = sub.add_parser("check", help="check a proof script against a theory")
    p.add_argument("theory")
    p.add_argument("proof")
    common(p)

    p = sub.add_parser("eval", help="evaluate a term in a model")
    p.add_argument("theory")
    p.add_argument("model")
    p.add_argument("term")
    p.add_argument("--env", default="", help="environment, e.g. x=0,y=1")
    p.add_argument("--ctx", default=None, help="context, e.g. x:M,y:M (default: inferred)")
    common(p)

    p = sub.add_parser("satisfies", help="does a model satisfy a theory")
    p.add_argument("theory")
    p.add_argument("model")
    common(p)

    p = sub.add_parser("sound", help="check a proof, then test its conclusion in a model")
    p.add_argument("theory")
    p.add_argument("model")
    p.add_argument("proof")
    common(p)

    p = sub.add_parser("complete", help="rebuild a derivation from term-model evidence")
    p.add_argument("theory")
    p.add_argument("proof")
    common(p)

    p = sub.add_parser("countermodel", help="search finite models refuting an equation")
    p.add_argument("theory")
    p.add_argument("equation")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p)
    return top


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _build_request(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd == "check":
        return {"theory": _read(args.theory), "proof": _read(args.proof)}
    if cmd == "eval":
        return {
            "theory": _read(args.theory),
            "model": _read(args.model),
            "term": args.term,
            "env": args.env,
            "ctx": args.ctx,
        }
    if cmd == "satisfies":
        return {"theory": _read(args.theory), "model": _read(args.model)}
    if cmd == "sound":
        return {
            "theory": _read(args.theory),
            "model": _read(args.model),
            "proof": _read(args.proof),
        }
    if cmd == "complete":
        return {"theory": _read(args.theory), "proof": _read(args.proof)}
    if cmd == "countermodel":
        return {
            "theory": _read(args.theory),
            "equation": args.equation,
            "max_size": args.max_size,
            "budget": args.budget,
        }
    raise AssertionError(cmd)


def _run_local(cmd: str, req: dict) -> reports.Report:
    if cmd == "check":
        return reports.run_check(req["theory"], req["proof"])
    if cmd == "eval":
        return reports.run_eval(req["theory"], req["model"], req["term"], req["env"], req["ctx"])
    if cmd == "satisfies":
        return reports.run_satisfies(req["theory"], req["model"])
    if cmd == "sound":
        return reports.run_sound(req["theory"], req["model"], req["proof"])
    if cmd == "complete":
        return reports.run_complete(req["theory"], req["proof"])
    if cmd == "countermodel":
        return reports.run_countermodel(req["theory"], req["equation"], req["max_size"], req["budget"])
    raise AssertionError(cmd)


def _run_remote(cmd: str, req: dict, server: str) -> dict:
    import httpx

    url = server.rstrip("/") + "/" + cmd
    response = httpx.post(url, json=req, timeout=600.0)
    response.raise_for_status()
    return response.json()


def _render(cmd: str, payload: dict, as_json: bool) -> int:
    exit_code = reports.exit_code_for(cmd, payload)
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
        return exit_code
    text = payload.get("text", "")
    if payload.get("status") == reports.OK:
        if text:
            print(text)
    else:
        print(text, file=sys.stderr)
    return exit_code


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        req = _build_request(args)
    except OSError as err:
        print(f"error[IO]: {err}", file=sys.stderr)
        return 2
    if args.server:
        try:
            payload = _run_remote(args.command, req, args.server)
        except Exception as err:  # connection or HTTP failure
            print(f"error[Server]: {err}", file=sys.stderr)
            return 2
    else:
        payload = _run_local(args.command, req).payload
    return _render(args.command, payload, args.json)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
