"""Text formats for codes, base-codeword sets and designs.

Code file::

    CCC 1
    4 7 4 1 1 1          # q n d w1 w2 ...
    # comment lines start with "# "
    group 0 3            # optional, GDCs only
    0:1 1:2 3:3          # one word per line, positions ascending

Base-codeword file (``BCS 1``) has the same header, then ``develop S L``,
optionally ``stride T`` (groups are residue classes mod T) or
``multipliers K`` (apply the order-K multiplicative subgroup of GF(n)),
``expect N``, and one ``base`` line per base word.

Design file (``GDD 1``): ``points N``, ``K k1 k2 ...``, ``group``/``block``
lines, optionally ``class`` lines (block indices), a ``hole`` line, and a
``partial`` line for prestructures that are not complete designs.

Every reader verifies what it parses before returning it.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .core import (BlockDesign, Codeword, Composition, ConstantCompositionCode, GdcError,
                   GroupDivisibleCode, GroupPartition, VerificationReport, Check, make_code,
                   make_gdc, node, verify_design)


class FormatError(GdcError, ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


LIBRARY_ENV = "CCC_LIBRARY_PATH"


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield i, s


def _comments(text: str) -> list[str]:
    return [ln[2:] for ln in text.splitlines() if ln.startswith("# ")]


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _word(tokens: Sequence[str], n: int, lineno: int) -> Codeword:
    sup = []
    for tok in tokens:
        p, sep, s = tok.partition(":")
        if not sep:
            raise FormatError(f"expected pos:sym, got {tok!r}", lineno)
        sup.append(tuple(_ints((p, s), lineno)))
    pos = [p for p, _ in sup]
    if pos != sorted(pos):
        raise FormatError("positions must be ascending", lineno)
    try:
        return Codeword(n, tuple(sup))
    except ValueError as e:
        raise FormatError(str(e), lineno) from None


def _header(lines, magic: str):
    try:
        ln, first = next(lines)
    except StopIteration:
        raise FormatError("empty file") from None
    if first != magic:
        raise FormatError(f"expected {magic!r} header, got {first!r}", ln)
    try:
        ln, params = next(lines)
    except StopIteration:
        raise FormatError("missing parameter line") from None
    vals = _ints(params.split(), ln)
    if len(vals) < 4:
        raise FormatError("parameter line needs q n d w1 ...", ln)
    q, n, d, *w = vals
    comp = Composition(tuple(w))
    if comp.q != q:
        raise FormatError(f"composition {comp} does not match q={q}", ln)
    return q, n, d, comp


def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# codes


def emit_code(obj: ConstantCompositionCode | GroupDivisibleCode, comments: Iterable[str] = ()) -> str:
    code = obj.code if isinstance(obj, GroupDivisibleCode) else obj
    out = ["CCC 1", " ".join(map(str, (code.q, code.n, code.d_claimed, *code.comp.weights)))]
    out += [f"# {c}" for c in comments]
    if isinstance(obj, GroupDivisibleCode):
        for g in sorted(obj.partition.groups):
            out.append("group " + " ".join(map(str, g)))
    for u in sorted(code.words):
        out.append(str(u))
    return "\n".join(out) + "\n"


def parse_code(text: str, verify: bool = True) -> ConstantCompositionCode | GroupDivisibleCode:
    lines = _lines(text)
    q, n, d, comp = _header(lines, "CCC 1")
    groups, words, seen = [], [], set()
    for ln, s in lines:
        tok = s.split()
        if tok[0] == "group":
            groups.append(tuple(_ints(tok[1:], ln)))
            continue
        u = _word(tok, n, ln)
        if u in seen:
            raise FormatError(f"duplicate word {u}", ln)
        seen.add(u)
        words.append(u)
    cite = "; ".join(_comments(text))
    prov = node("file", cite, n=n, d=d, comp=comp)
    code = make_code(n, comp, words, d, prov, check=verify)
    if groups:
        try:
            part = GroupPartition(n, tuple(groups))
        except ValueError as e:
            raise FormatError(str(e)) from None
        return make_gdc(part, code, prov, check=verify)
    return code


def write_code(path, obj, comments: Iterable[str] = ()) -> None:
    _atomic_write(path, emit_code(obj, comments))


def read_code(path, verify: bool = True):
    return parse_code(Path(path).read_text(), verify)


# ---------------------------------------------------------------------------
# base-codeword sets


@dataclass(frozen=True)
class BaseCodewordSet:
    """Base words plus the group action that develops them.

    Positions move by ``x -> x + step`` for ``orbit`` steps (default: the
    whole cycle ``n / step``). ``multiplier_order`` additionally applies the
    multiplicative subgroup of that order of GF(n) to each base first.
    ``group_stride`` attaches groups ``{i, i + t, i + 2t, ...}``.
    """

    n: int
    comp: Composition
    d: int
    bases: tuple[Codeword, ...]
    step: int = 1
    orbit: int | None = None
    group_stride: int | None = None
    multiplier_order: int | None = None
    expected_size: int | None = None
    cite: str = field(default="", compare=False)

    @property
    def q(self) -> int:
        return self.comp.q

    @property
    def orbit_length(self) -> int:
        return self.orbit if self.orbit is not None else self.n // self.step


def emit_bases(b: BaseCodewordSet, comments: Iterable[str] = ()) -> str:
    out = ["BCS 1", " ".join(map(str, (b.q, b.n, b.d, *b.comp.weights)))]
    out += [f"# {c}" for c in comments]
    out.append(f"develop {b.step} {b.orbit_length}")
    if b.group_stride is not None:
        out.append(f"stride {b.group_stride}")
    if b.multiplier_order is not None:
        out.append(f"multipliers {b.multiplier_order}")
    if b.expected_size is not None:
        out.append(f"expect {b.expected_size}")
    for u in b.bases:
        out.append("base " + " ".join(f"{p}:{s}" for p, s in u.support))
    return "\n".join(out) + "\n"


def parse_bases(text: str) -> BaseCodewordSet:
    lines = _lines(text)
    q, n, d, comp = _header(lines, "BCS 1")
    step, orbit, stride, mult, expect, bases = 1, None, None, None, None, []
    for ln, s in lines:
        tok = s.split()
        key, rest = tok[0], tok[1:]
        if key == "develop":
            step, orbit = _ints(rest, ln)
        elif key == "stride":
            (stride,) = _ints(rest, ln)
        elif key == "multipliers":
            (mult,) = _ints(rest, ln)
        elif key == "expect":
            (expect,) = _ints(rest, ln)
        elif key == "base":
            bases.append(_word(rest, n, ln))
        else:
            raise FormatError(f"unknown keyword {key!r}", ln)
    return BaseCodewordSet(n, comp, d, tuple(bases), step, orbit, stride, mult, expect,
                           "; ".join(_comments(text)))


# ---------------------------------------------------------------------------
# designs


def emit_design(b: BlockDesign, comments: Iterable[str] = (), partial: bool = False) -> str:
    out = ["GDD 1"] + [f"# {c}" for c in comments]
    if partial:
        out.append("partial")
    out.append(f"points {b.n}")
    out.append("K " + " ".join(map(str, sorted(b.K))))
    for g in b.partition.groups:
        out.append("group " + " ".join(map(str, g)))
    for blk in b.blocks:
        out.append("block " + " ".join(map(str, blk)))
    for cls in b.resolution or ():
        out.append("class " + " ".join(map(str, cls)))
    if b.hole is not None:
        out.append("hole " + " ".join(map(str, sorted(b.hole))))
    return "\n".join(out) + "\n"


def _structural_report(b: BlockDesign) -> VerificationReport:
    """Checks that make sense for a partial design (prestructure)."""
    full = verify_design(b)
    keep = [c for c in full.checks if c.name != "every-pair-covered"]
    return VerificationReport(tuple(keep))


def parse_design(text: str, verify: bool = True) -> tuple[BlockDesign, bool]:
    """Return (design, partial)."""
    lines = _lines(text)
    try:
        ln, first = next(lines)
    except StopIteration:
        raise FormatError("empty file") from None
    if first != "GDD 1":
        raise FormatError(f"expected 'GDD 1' header, got {first!r}", ln)
    n, K, groups, blocks, classes, hole, partial = None, None, [], [], [], None, False
    for ln, s in lines:
        tok = s.split()
        key, rest = tok[0], tok[1:]
        if key == "partial":
            partial = True
        elif key == "points":
            (n,) = _ints(rest, ln)
        elif key == "K":
            K = frozenset(_ints(rest, ln))
        elif key == "group":
            groups.append(tuple(_ints(rest, ln)))
        elif key == "block":
            blocks.append(tuple(_ints(rest, ln)))
        elif key == "class":
            classes.append(tuple(_ints(rest, ln)))
        elif key == "hole":
            hole = frozenset(_ints(rest, ln))
        else:
            raise FormatError(f"unknown keyword {key!r}", ln)
    if n is None or K is None:
        raise FormatError("missing 'points' or 'K' line")
    try:
        part = GroupPartition(n, tuple(groups))
    except ValueError as e:
        raise FormatError(str(e)) from None
    cite = "; ".join(_comments(text))
    d = BlockDesign(part, tuple(blocks), K, tuple(classes) if classes else None, hole,
                    node("file", cite, n=n, type=part.type))
    if verify:
        rep = _structural_report(d) if partial else verify_design(d)
        rep.require("design file")
    return d, partial


def write_design(path, b: BlockDesign, comments: Iterable[str] = (), partial: bool = False) -> None:
    _atomic_write(path, emit_design(b, comments, partial))


def read_design(path, verify: bool = True) -> BlockDesign:
    return parse_design(Path(path).read_text(), verify)[0]


# ---------------------------------------------------------------------------
# design library


def library_path() -> list[Path]:
    raw = os.environ.get(LIBRARY_ENV, "")
    return [Path(p) for p in raw.split(os.pathsep) if p]


def library_designs() -> Iterable[BlockDesign]:
    """Complete designs found on the library search path, in path order.
    Files that fail to parse or verify are skipped."""
    for root in library_path():
        if not root.is_dir():
            continue
        for f in sorted(root.rglob("*")):
            if not f.is_file():
                continue
            try:
                d, partial = parse_design(f.read_text())
            except (GdcError, ValueError, UnicodeDecodeError):
                continue
            if not partial:
                yield d
