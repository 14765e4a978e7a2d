"""Line-oriented sequence description files.

Example::

    # E = {t2^(n+1)}
    rank = 2
    prefix = [t2]
    tail.u = t2^2 - t2
    tail.b = (0,1)
    tail.n0 = 0

``tail.n0`` is the index of the last prefix term and defaults to
``len(prefix) - 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .lexgroup import GroupElement
from .parsing import ParseError, parse_expr
from .pcvseq import PCSeq
from .valfield import format_element

_KEYS = ("rank", "prefix", "tail.u", "tail.b", "tail.n0")


class SequenceFileError(ValueError):
    pass


@dataclass
class SequenceSpec:
    rank: int
    prefix: list[str]
    u: str
    b: tuple[int, ...]
    n0: int

    def build(self, *, validate: bool = True) -> PCSeq:
        if self.n0 != len(self.prefix) - 1:
            raise SequenceFileError(
                f"tail.n0 = {self.n0} but the prefix lists {len(self.prefix)} terms"
            )
        if len(self.b) != self.rank:
            raise SequenceFileError(f"tail.b has {len(self.b)} entries, rank is {self.rank}")
        prefix = [parse_expr(x, self.rank) for x in self.prefix]
        u = parse_expr(self.u, self.rank)
        return PCSeq(prefix, u, GroupElement(self.b), validate=validate)


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_spec(text: str) -> SequenceSpec:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _KEYS:
            raise SequenceFileError(f"line {lineno}: expected one of {', '.join(_KEYS)}")
        if key in fields:
            raise SequenceFileError(f"line {lineno}: duplicate key {key}")
        fields[key] = value
    for key in ("rank", "prefix", "tail.u", "tail.b"):
        if key not in fields:
            raise SequenceFileError(f"missing key {key}")
    try:
        rank = int(fields["rank"])
    except ValueError:
        raise SequenceFileError(f"rank must be an integer, got {fields['rank']!r}") from None
    m = re.fullmatch(r"\[(.*)\]", fields["prefix"], re.S)
    if not m or not m.group(1).strip():
        raise SequenceFileError("prefix must be a nonempty list [expr, ...]")
    prefix = _split_top_level(m.group(1))
    m = re.fullmatch(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)", fields["tail.b"])
    if not m:
        raise SequenceFileError(f"tail.b must look like (int,...,int), got {fields['tail.b']!r}")
    b = tuple(int(x) for x in m.group(1).split(","))
    n0 = int(fields.get("tail.n0", len(prefix) - 1))
    return SequenceSpec(rank, prefix, fields["tail.u"], b, n0)


def load_sequence(path: Union[str, Path], *, validate: bool = True) -> PCSeq:
    spec = parse_spec(Path(path).read_text(encoding="utf-8"))
    try:
        return spec.build(validate=validate)
    except ParseError as exc:
        raise SequenceFileError(f"{path}: {exc}") from exc


def format_spec(E: PCSeq) -> str:
    prefix = ", ".join(format_element(x) for x in E.prefix)
    b = ",".join(str(c) for c in E.tail.b.coords)
    return (
        f"rank = {E.rank}\n"
        f"prefix = [{prefix}]\n"
        f"tail.u = {format_element(E.tail.u)}\n"
        f"tail.b = ({b})\n"
        f"tail.n0 = {E.n0}\n"
    )
