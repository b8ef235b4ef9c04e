"""Shared fixtures: hand-built reference structures and the bundled files.

The programmatic fixtures are constructed directly from dataclasses, without
going through the parsers, so parser tests can compare against them as an
independent oracle.
"""

from importlib import resources

import pytest

from eqlogic import (
    App,
    Equation,
    OpDecl,
    Theory,
    Var,
    make_theory,
    parse_model,
    parse_theory,
    validate_model,
    validate_signature,
)


def data_text(name: str) -> str:
    return (resources.files("eqlogic") / "data" / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def monoid() -> Theory:
    sig = validate_signature(
        ["M"],
        [OpDecl("plus", ("M", "M"), "M"), OpDecl("e", (), "M")],
    )
    x, y, z = Var("x"), Var("y"), Var("z")
    e = App("e")

    def plus(a, b):
        return App("plus", (a, b))

    return make_theory(
        sig,
        {
            "assoc": Equation(
                {"x": "M", "y": "M", "z": "M"},
                "M",
                plus(plus(x, y), z),
                plus(x, plus(y, z)),
            ),
            "unitL": Equation({"x": "M"}, "M", plus(e, x), x),
            "unitR": Equation({"x": "M"}, "M", plus(x, e), x),
        },
    )


@pytest.fixture(scope="session")
def semilattice() -> Theory:
    sig = validate_signature(["S"], [OpDecl("meet", ("S", "S"), "S")])
    x, y, z = Var("x"), Var("y"), Var("z")

    def meet(a, b):
        return App("meet", (a, b))

    return make_theory(
        sig,
        {
            "assoc": Equation(
                {"x": "S", "y": "S", "z": "S"},
                "S",
                meet(meet(x, y), z),
                meet(x, meet(y, z)),
            ),
            "comm": Equation({"x": "S", "y": "S"}, "S", meet(x, y), meet(y, x)),
            "idem": Equation({"x": "S"}, "S", meet(x, x), x),
        },
    )


@pytest.fixture(scope="session")
def z2(monoid):
    """Addition mod 2: the two-element group as a monoid model."""
    table = {
        ("0", "0"): "0",
        ("0", "1"): "1",
        ("1", "0"): "1",
        ("1", "1"): "0",
    }
    return validate_model(
        monoid.signature,
        {"M": ["0", "1"]},
        {"plus": table, "e": {(): "0"}},
    )


@pytest.fixture(scope="session")
def z3(monoid):
    elems = ["0", "1", "2"]
    table = {
        (a, b): str((int(a) + int(b)) % 3) for a in elems for b in elems
    }
    return validate_model(
        monoid.signature,
        {"M": elems},
        {"plus": table, "e": {(): "0"}},
    )


@pytest.fixture(scope="session")
def meet2(semilattice):
    """Boolean AND on {0, 1}."""
    table = {
        ("0", "0"): "0",
        ("0", "1"): "0",
        ("1", "0"): "0",
        ("1", "1"): "1",
    }
    return validate_model(semilattice.signature, {"S": ["0", "1"]}, {"meet": table})


@pytest.fixture(scope="session")
def parsed_monoid() -> Theory:
    return parse_theory(data_text("monoid.eq"))


@pytest.fixture(scope="session")
def parsed_semilattice() -> Theory:
    return parse_theory(data_text("semilattice.eq"))


@pytest.fixture(scope="session")
def parsed_z2(parsed_monoid):
    return parse_model(data_text("z2.mdl"), parsed_monoid.signature)


@pytest.fixture(scope="session")
def parsed_z3(parsed_monoid):
    return parse_model(data_text("z3.mdl"), parsed_monoid.signature)


@pytest.fixture(scope="session")
def parsed_meet2(parsed_semilattice):
    return parse_model(data_text("meet2.mdl"), parsed_semilattice.signature)
