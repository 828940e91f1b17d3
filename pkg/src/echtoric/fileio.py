"""Reading and writing domains and reports with exact rationals.

Rationals travel as strings "p/q" or "n" so that no JSON float ever
touches a value.  Serialisation is canonical: sorted keys, two-space
indent, one trailing newline, so identical data gives identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Union

from .domains import ToricDomain
from .errors import DomainError

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: Union[str, int]) -> Fraction:
    """Exact rational from "p/q" or integer text; floats never pass."""
    if isinstance(text, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise DomainError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise DomainError(f"not a rational literal: {text!r}") from None


def rational_str(value: Fraction) -> str:
    return str(value)


def domain_to_json(domain: ToricDomain) -> dict:
    return {
        "type": domain.kind,
        "boundary": [[str(p.x), str(p.y)] for p in domain.boundary],
    }


def domain_from_json(obj: object) -> ToricDomain:
    if not isinstance(obj, dict):
        raise DomainError("domain file must hold a JSON object")
    kind = obj.get("type")
    if kind not in ("concave", "convex"):
        raise DomainError(f"domain type must be concave or convex, got {kind!r}")
    boundary = obj.get("boundary")
    if not isinstance(boundary, list):
        raise DomainError("domain boundary must be a list of [x, y] pairs")
    points = []
    for entry in boundary:
        if not isinstance(entry, list) or len(entry) != 2:
            raise DomainError(f"boundary entry {entry!r} is not an [x, y] pair")
        points.append((parse_rational(entry[0]), parse_rational(entry[1])))
    if kind == "concave":
        return ToricDomain.concave(points)
    return ToricDomain.convex(points)


def load_domain(path: Union[str, Path]) -> ToricDomain:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from exc
    return domain_from_json(obj)


def save_domain(domain: ToricDomain, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(domain_to_json(domain)),
                          encoding="utf-8")


def canonical_json(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def digest_file(path: Union[str, Path]) -> str:
    return digest_bytes(Path(path).read_bytes())
