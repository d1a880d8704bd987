"""JSON file formats and the built-in named rings."""

from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path
from typing import Any

from .families import ra_cohomology, rp_ring
from .ring import CohomologyRing, pair_positions, pairs, relation_from_terms, sym_dim


class InputError(ValueError):
    """Malformed user input (file contents, names, flag values)."""


def parse_int(value) -> int:
    """Integers arrive as JSON numbers or as decimal strings (for huge values)."""
    if isinstance(value, bool):
        raise InputError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"\s*[+-]?\d+\s*", value):
        return int(value)
    raise InputError(f"expected an integer, got {value!r}")


def ring_from_json(data: Any) -> CohomologyRing:
    if not isinstance(data, dict) or "k" not in data:
        raise InputError("ring definition must be an object with a 'k' field")
    k = parse_int(data["k"])
    if k < 1:
        raise InputError("k must be positive")
    rels = []
    for n, rel in enumerate(data.get("relations", [])):
        if not isinstance(rel, dict):
            raise InputError(f"relation {n + 1} must be an object like {{\"1,2\": 3}}")
        terms = {}
        for key, coeff in rel.items():
            m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", key)
            if not m:
                raise InputError(f"bad pair key {key!r} in relation {n + 1}")
            i, j = int(m.group(1)), int(m.group(2))
            if not (1 <= i <= j <= k):
                raise InputError(f"pair {key!r} in relation {n + 1} needs 1 <= i <= j <= {k}")
            terms[(i - 1, j - 1)] = terms.get((i - 1, j - 1), 0) + parse_int(coeff)
        rels.append(relation_from_terms(k, terms))
    names = data.get("generators")
    if names is not None and (not isinstance(names, list) or len(names) != k):
        raise InputError("'generators' must list one name per generator")
    return CohomologyRing(k, tuple(rels), data.get("name"),
                          tuple(str(x) for x in names) if names else None)


def ring_to_json(ring: CohomologyRing) -> dict:
    rels = []
    for rel in ring.relations:
        rels.append({f"{i + 1},{j + 1}": c for c, (i, j) in zip(rel, pairs(ring.k)) if c})
    out: dict = {"k": ring.k, "relations": rels}
    if ring.generator_names:
        out["generators"] = list(ring.generator_names)
    if ring.name:
        out["name"] = ring.name
    return out


def _ring(k, relations, name, names=None):
    pos = pair_positions(k)
    rels = []
    for terms in relations:
        v = [0] * sym_dim(k)
        for (i, j), c in terms.items():
            v[pos[(i, j)]] += c
        rels.append(tuple(v))
    return CohomologyRing(k, tuple(rels), name, names)


def cp2cp2() -> CohomologyRing:
    """Z[u,v]/<u^2 - v^2, uv>."""
    return _ring(2, [{(0, 0): 1, (1, 1): -1}, {(0, 1): 1}], "CP2#CP2", ("u", "v"))


def cp2cp2_ra() -> CohomologyRing:
    """Z[u1,u2]/<u1^2 + 2u1u2, u2^2 + u1u2>, the R(A) presentation with k = 2."""
    return ra_cohomology([[1, 2], [1, 1]], name="CP2#CP2 as R(A)")


def eschenburg() -> CohomologyRing:
    """Z[u,v]/<v^2 - u^2 - uv>; the degree-6 relation u^3 is dropped."""
    return _ring(2, [{(1, 1): 1, (0, 0): -1, (0, 1): -1}], "SU(3)//T^2", ("u", "v"))


def s2xs2() -> CohomologyRing:
    """Z[u,v]/<u^2, v^2>: S^2 x S^2, which fails Property (*)."""
    return _ring(2, [{(0, 0): 1}, {(1, 1): 1}], "S2xS2", ("u", "v"))


BUILTINS = {
    "cp2cp2": cp2cp2,
    "cp2cp2-ra": cp2cp2_ra,
    "eschenburg": eschenburg,
    "s2xs2": s2xs2,
}


def load_json(source: str) -> Any:
    """Parse inline JSON (starting with '{' or '[') or read it from a file."""
    text = source.strip()
    if text.startswith("{") or text.startswith("["):
        origin = "inline JSON"
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError(f"no such file: {source}")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
        origin = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {origin}: {exc.msg} at line {exc.lineno}") from None


def resolve_ring(source: str) -> CohomologyRing:
    """A built-in name, 'rp:<p>:<k>', 'ra:<json matrix>', or a ring file."""
    if source in BUILTINS:
        return BUILTINS[source]()
    m = re.fullmatch(r"rp:(\d+):(\d+)", source)
    if m:
        try:
            return rp_ring(int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if source.startswith("ra:"):
        try:
            return ra_cohomology(load_json(source[3:]))
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from None
    try:
        return ring_from_json(load_json(source))
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None


def digest(obj: Any) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode("utf-8")).hexdigest()
