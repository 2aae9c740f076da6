"""Versioned JSON reports: witness (de)serialisation and schema validation."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .algebra import QQ, NumberField, Poly, coef_str, to_fraction
from .decision import (
    Answer,
    CondIIWitness,
    ConditionIWitness,
    GeneralWitness,
    LogSystemWitness,
    Obstruction,
    RiccatiCoeffs,
    RiccatiWitness,
    Verdict,
)
from .parsing import parse_ratfunc, poly_to_str
from .residues import LogDerivWitness

__all__ = [
    "SCHEMA_VERSION",
    "load_schema",
    "validate_report",
    "witness_to_json",
    "witness_from_json",
    "verdict_to_json",
    "verdict_from_json",
    "pretty_witness",
]

SCHEMA_VERSION = "1.0"


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = resources.files("internality").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` does not match the shipped schema."""
    import jsonschema

    jsonschema.validate(report, load_schema())


def _q(c) -> str:
    return str(to_fraction(c))


def _poly_json(p: Poly) -> dict:
    K = p.domain
    if isinstance(K, NumberField):
        coeffs = [[str(q) for q in c.rational_coeffs()] for c in p.coeffs]
    else:
        coeffs = [_q(c) for c in p.coeffs]
    return {"text": str(p), "coeffs": coeffs}


def _poly_from_json(d: dict, K=QQ) -> Poly:
    if isinstance(K, NumberField):
        cs = [K.convert(Poly([QQ(Fraction(q).numerator, Fraction(q).denominator) for q in c], QQ)) for c in d["coeffs"]]
        return Poly(cs, K)
    return Poly([QQ(Fraction(q).numerator, Fraction(q).denominator) for q in d["coeffs"]], QQ)


def logderiv_to_json(w: LogDerivWitness) -> dict:
    if w.materialized:
        scale, minpoly = str(w.scale), None
    else:
        scale, minpoly = w.field.name, _poly_json(w.field.minpoly)
    return {
        "scale": scale,
        "minpoly": minpoly,
        "factors": [{"poly": _poly_json(V), "exponent": n} for V, n in w.factors],
    }


def logderiv_from_json(d: dict) -> LogDerivWitness:
    if d["minpoly"] is None:
        factors = tuple((_poly_from_json(f["poly"]), int(f["exponent"])) for f in d["factors"])
        return LogDerivWitness(Fraction(d["scale"]), factors)
    K = NumberField(_poly_from_json(d["minpoly"]), d["scale"])
    factors = tuple((_poly_from_json(f["poly"], K), int(f["exponent"])) for f in d["factors"])
    return LogDerivWitness(K.gen, factors, K)


def _coeffs_json(c: RiccatiCoeffs) -> dict:
    a0, a1, a2 = c.as_strings()
    return {"a0": a0, "a1": a1, "a2": a2}


def _coeffs_from_json(d: dict, params) -> RiccatiCoeffs:
    vals = []
    for key in ("a0", "a1", "a2"):
        h = parse_ratfunc(d[key], params)
        vals.append(h.num[0])
    return RiccatiCoeffs(*vals, domain=h.domain)


def witness_to_json(w) -> dict:
    if isinstance(w, RiccatiWitness):
        return {"kind": "riccati", "coeffs": _coeffs_json(w.coeffs), "first_integral": w.first_integral}
    if isinstance(w, LogSystemWitness):
        return {
            "kind": "log-system",
            "coeffs": _coeffs_json(w.coeffs),
            "m1": w.m1,
            "m2": w.m2,
            "internal": witness_to_json(w.internal),
            "relations": dict(w.relations),
        }
    if isinstance(w, ConditionIWitness):
        return {
            "kind": "condition-i",
            "form": w.form,
            "u": str(w.u) if w.u is not None else None,
            "log": logderiv_to_json(w.log) if w.log is not None else None,
        }
    if isinstance(w, CondIIWitness):
        return {"kind": "condition-ii", "m": w.m, "b": str(w.b), "v": logderiv_to_json(w.v)}
    if isinstance(w, GeneralWitness):
        return {
            "kind": "general",
            "condition_i": verdict_to_json(w.condition_i),
            "condition_ii": verdict_to_json(w.condition_ii),
        }
    raise TypeError(f"unknown witness type {type(w).__name__}")


def witness_from_json(d: dict, params=()):
    kind = d["kind"]
    if kind == "riccati":
        return RiccatiWitness(_coeffs_from_json(d["coeffs"], params), d["first_integral"])
    if kind == "log-system":
        return LogSystemWitness(
            _coeffs_from_json(d["coeffs"], params),
            int(d["m1"]),
            int(d["m2"]),
            witness_from_json(d["internal"], params),
            dict(d["relations"]),
        )
    if kind == "condition-i":
        u = parse_ratfunc(d["u"]) if d["u"] is not None else None
        log = logderiv_from_json(d["log"]) if d["log"] is not None else None
        return ConditionIWitness(d["form"], u, log)
    if kind == "condition-ii":
        return CondIIWitness(int(d["m"]), Fraction(d["b"]), logderiv_from_json(d["v"]))
    if kind == "general":
        return GeneralWitness(verdict_from_json(d["condition_i"], params), verdict_from_json(d["condition_ii"], params))
    raise ValueError(f"unknown witness kind {kind!r}")


def verdict_to_json(v: Verdict) -> dict:
    out = {"answer": v.answer.value, "certificate": None, "obstruction": None, "reason": v.reason}
    if v.answer is Answer.YES:
        out["certificate"] = {"pretty": pretty_witness(v.certificate), "structured": witness_to_json(v.certificate)}
    elif v.answer is Answer.NO:
        ob = v.certificate
        out["obstruction"] = {"clause": ob.clause, "detail": ob.detail, "text": str(ob)}
    return out


def verdict_from_json(d: dict, params=()) -> Verdict:
    answer = Answer(d["answer"])
    if answer is Answer.YES:
        return Verdict.yes(witness_from_json(d["certificate"]["structured"], params))
    if answer is Answer.NO:
        ob = d["obstruction"]
        return Verdict(Answer.NO, Obstruction(ob["clause"], ob["detail"]))
    return Verdict.unknown(d["reason"])


def _logderiv_pretty(w: LogDerivWitness, name: str) -> str:
    body = " * ".join(f"({V})" if n == 1 else f"({V})^{n}" for V, n in w.factors) or "1"
    if w.materialized:
        return f"{name} = {body}"
    c = w.field.name
    return f"{name} = {body}, {c} a root of {poly_to_str(w.field.minpoly, var=c)}"


def pretty_witness(w) -> str:
    if isinstance(w, RiccatiWitness):
        a0, a1, a2 = w.coeffs.as_strings()
        return f"(a2, a1, a0) = ({a2}, {a1}, {a0}); first integral {w.first_integral}"
    if isinstance(w, LogSystemWitness):
        a2 = coef_str(w.coeffs.a2, w.coeffs.domain)
        return f"a2 = {a2} = m1/m2 with (m1, m2) = ({w.m1}, {w.m2}); {pretty_witness(w.internal)}"
    if isinstance(w, ConditionIWitness):
        if w.form == "exact":
            return f"1/f = du/dx with u = {w.u}"
        if w.log.materialized:
            return f"1/f = c u'/u with c = {w.log.scale}, {_logderiv_pretty(w.log, 'u')}"
        return f"1/f = c u'/u with {_logderiv_pretty(w.log, 'u')}"
    if isinstance(w, CondIIWitness):
        return f"(b + m g)/f = v'/v with m = {w.m}, b = {w.b}, {_logderiv_pretty(w.v, 'v')}"
    if isinstance(w, GeneralWitness):
        return (
            f"condition (i): {pretty_witness(w.condition_i.certificate)}; "
            f"condition (ii): {pretty_witness(w.condition_ii.certificate)}"
        )
    raise TypeError(f"unknown witness type {type(w).__name__}")
