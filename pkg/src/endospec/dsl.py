"""The line-oriented problem language read by the command line.

::

    rank: 2
    phi: a -> b, b -> a b^2
    H: [a^2, b^2, a b]          # or: H: mod 2   /   H: total 2

Words are letters with optional integer exponents.  Inverses are written
per letter, ``a^-1`` or ``A``; ``1`` is the identity.  Above rank 26 the
generators are ``x1, x2, ...`` (inverse ``x1^-1`` or ``X1``).  ``#`` starts
a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, RankMismatch, UnknownGenerator
from .graphs import SubgroupGraph, build_graph
from .families import mod_n_homology_kernel, total_exponent_kernel
from .words import Endomorphism, Word, generator_name


@dataclass(frozen=True)
class SubgroupSpec:
    kind: str  # "generators" | "mod" | "total"
    generators: tuple[Word, ...] = ()
    n: int = 0

    def build(self, rank: int) -> SubgroupGraph:
        if self.kind == "generators":
            return build_graph(rank, self.generators)
        if self.kind == "mod":
            return mod_n_homology_kernel(rank, self.n)
        return total_exponent_kernel(rank, self.n)

    def format(self) -> str:
        if self.kind == "generators":
            return "[" + ", ".join(w.format() for w in self.generators) + "]"
        return f"{self.kind} {self.n}"


@dataclass(frozen=True)
class ProblemSpec:
    rank: int
    phi: Endomorphism
    subgroup: SubgroupSpec | None = None
    options: dict = field(default_factory=dict, compare=False, hash=False)

    def subgroup_graph(self) -> SubgroupGraph | None:
        return self.subgroup.build(self.rank) if self.subgroup else None


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]\d*)(?:\^(?P<exp>-?\d+))?|(?P<one>1)(?![\d^]))")


def _generator_index(name: str, rank: int) -> tuple[int, int] | None:
    """``(index, sign)`` for a generator token, or ``None`` if unknown."""
    sign = -1 if name[0].isupper() else 1
    low = name.lower()
    if rank <= 26:
        if len(low) == 1 and 0 <= ord(low) - ord("a") < rank:
            return ord(low) - ord("a"), sign
        return None
    m = re.fullmatch(r"x(\d+)", low)
    if m and 1 <= int(m.group(1)) <= rank:
        return int(m.group(1)) - 1, sign
    return None


def parse_word(text: str, rank: int, line: int = 0, column: int = 1) -> Word:
    letters: list[int] = []
    pos = 0
    stripped = text.rstrip()
    saw_one = False
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            col = column + pos + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
            raise ParseError(f"unexpected {stripped[pos:].strip()[:1]!r} in word", line, col)
        if m.group("one"):
            saw_one = True
        else:
            name = m.group("name")
            found = _generator_index(name, rank)
            col = column + m.start("name")
            if found is None:
                raise UnknownGenerator(f"unknown generator {name!r} for rank {rank}", line, col)
            gen, sign = found
            exp = int(m.group("exp")) if m.group("exp") else 1
            letters.extend([sign * (gen + 1) if exp > 0 else -sign * (gen + 1)] * abs(exp))
        pos = m.end()
    if not letters and not saw_one:
        raise ParseError("empty word (write 1 for the identity)", line, column)
    return Word(rank, letters)


def _split_top(text: str, sep: str = ",") -> list[tuple[int, str]]:
    """Split on ``sep`` and keep each piece's offset."""
    out, start = [], 0
    for i, ch in enumerate(text):
        if ch == sep:
            out.append((start, text[start:i]))
            start = i + 1
    out.append((start, text[start:]))
    return out


def parse_spec(text: str) -> ProblemSpec:
    entries: dict[str, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno, len(line) - len(line.lstrip()) + 1)
        key, value = line.split(":", 1)
        key = key.strip()
        if key not in ("rank", "phi", "H"):
            raise ParseError(f"unknown key {key!r}", lineno, line.index(key) + 1)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, line.index(key) + 1)
        entries[key] = (lineno, line.index(":") + 2, value)

    if "rank" not in entries:
        raise ParseError("missing 'rank:' line", 1, 1)
    lineno, col, value = entries["rank"]
    try:
        rank = int(value.strip())
    except ValueError:
        raise ParseError(f"rank must be an integer, got {value.strip()!r}", lineno, col) from None
    if rank < 1:
        raise ParseError("rank must be at least 1", lineno, col)

    if "phi" not in entries:
        raise ParseError("missing 'phi:' line", lineno + 1, 1)
    lineno, col, value = entries["phi"]
    images: dict[int, Word] = {}
    for offset, piece in _split_top(value):
        if "->" not in piece:
            raise ParseError("expected '<generator> -> <word>'", lineno, col + offset)
        lhs, rhs = piece.split("->", 1)
        lhs_col = col + offset + len(lhs) - len(lhs.lstrip())
        found = _generator_index(lhs.strip(), rank)
        if found is None or found[1] < 0:
            raise UnknownGenerator(f"unknown generator {lhs.strip()!r} for rank {rank}", lineno, lhs_col)
        if found[0] in images:
            raise RankMismatch(f"line {lineno}: generator {lhs.strip()!r} mapped twice")
        images[found[0]] = parse_word(rhs, rank, lineno, col + offset + len(lhs) + 2)
    missing = [generator_name(i, rank) for i in range(rank) if i not in images]
    if missing:
        raise RankMismatch(f"line {lineno}: no image given for {', '.join(missing)}")
    phi = Endomorphism(rank, [images[i] for i in range(rank)])

    subgroup = None
    if "H" in entries:
        lineno, col, value = entries["H"]
        body = value.strip()
        body_col = col + len(value) - len(value.lstrip())
        m = re.fullmatch(r"(mod|total)\s+(\d+)", body)
        if m:
            n = int(m.group(2))
            if n < 1:
                raise ParseError("modulus must be positive", lineno, body_col)
            subgroup = SubgroupSpec(m.group(1), n=n)
        elif body.startswith("[") and body.endswith("]"):
            inner = body[1:-1]
            gens = []
            if inner.strip():
                for offset, piece in _split_top(inner):
                    gens.append(parse_word(piece, rank, lineno, body_col + 1 + offset))
            subgroup = SubgroupSpec("generators", tuple(gens))
        else:
            raise ParseError("expected '[words]', 'mod <n>' or 'total <n>'", lineno, body_col)
    return ProblemSpec(rank, phi, subgroup)


def format_spec(spec: ProblemSpec) -> str:
    lines = [f"rank: {spec.rank}", f"phi: {spec.phi}"]
    if spec.subgroup is not None:
        lines.append(f"H: {spec.subgroup.format()}")
    return "\n".join(lines) + "\n"
