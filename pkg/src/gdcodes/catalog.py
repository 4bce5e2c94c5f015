"""Shipped data: explicit codes, base-codeword sets, prestructures, designs
and the generator table, stored as text files under ``data/catalog/<kind>/``.

Nothing leaves this module unverified: codes and developed base sets are
re-checked on first use, prestructures get the structural checks, and
designs the full design verifier.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .core import (BlockDesign, Check, Composition, ConstantCompositionCode, GdcError,
                   GroupDivisibleCode, VerificationReport, node)
from . import formats

KINDS = ("Code", "BaseCodewordSet", "Prestructure", "Design")
_DIRS = {"code": "Code", "bases": "BaseCodewordSet", "prestructure": "Prestructure", "design": "Design"}


def catalog_root() -> Path:
    return Path(str(resources.files("gdcodes") / "data" / "catalog"))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    path: Path
    cite: str
    expected_size: int | None = None

    def text(self) -> str:
        return self.path.read_text()

    @property
    def payload(self):
        """The parsed, unverified file content."""
        return _parse(self.path, self.kind)

    def build(self):
        """The verified object: a code, GDC, or design."""
        return _build(self.path, self.kind)

    @property
    def params(self) -> tuple:
        """(n, d, comp) for codes and base sets, the type for designs."""
        return _params(self.path, self.kind)


def _parse(path: Path, kind: str):
    text = path.read_text()
    if kind == "Code":
        return formats.parse_code(text, verify=False)
    if kind == "BaseCodewordSet":
        return formats.parse_bases(text)
    return formats.parse_design(text, verify=False)[0]


@functools.lru_cache(maxsize=None)
def _build(path: Path, kind: str):
    from .gdcbuild import develop
    text = path.read_text()
    cite = "; ".join(ln[2:] for ln in text.splitlines() if ln.startswith("# "))
    if kind == "Code":
        obj = formats.parse_code(text)
    elif kind == "BaseCodewordSet":
        b = formats.parse_bases(text)
        obj = develop(b)
        if b.expected_size is not None and len(obj) != b.expected_size:
            raise GdcError(f"{path.name}: developed size {len(obj)} != expected {b.expected_size}")
    else:
        obj, _ = formats.parse_design(text)
    prov = node("catalog", cite, obj.provenance if not isinstance(obj, BlockDesign) else None, id=path.name)
    if isinstance(obj, ConstantCompositionCode):
        return obj.with_provenance(prov)
    if isinstance(obj, GroupDivisibleCode):
        return GroupDivisibleCode(obj.partition, obj.code, prov)
    return obj.replace(provenance=prov)


@functools.lru_cache(maxsize=None)
def _params(path: Path, kind: str):
    obj = _parse(path, kind)
    if kind == "Code":
        code = obj.code if isinstance(obj, GroupDivisibleCode) else obj
        grp = str(obj.type) if isinstance(obj, GroupDivisibleCode) else None
        return (code.n, code.d_claimed, code.comp, grp)
    if kind == "BaseCodewordSet":
        grp = None
        if obj.group_stride is not None:
            grp = f"{obj.n // obj.group_stride}^{obj.group_stride}"
        return (obj.n, obj.d, obj.comp, grp)
    return (str(obj.type),)


@functools.lru_cache(maxsize=None)
def entries() -> tuple[CatalogEntry, ...]:
    out = []
    root = catalog_root()
    for sub, kind in _DIRS.items():
        d = root / sub
        if not d.is_dir():
            continue
        for f in sorted(d.iterdir()):
            if not f.is_file():
                continue
            text = f.read_text()
            cite = "; ".join(ln[2:] for ln in text.splitlines() if ln.startswith("# "))
            expect = None
            for ln in text.splitlines():
                if ln.startswith("expect "):
                    expect = int(ln.split()[1])
            out.append(CatalogEntry(f.name, kind, f, cite, expect))
    return tuple(out)


def _comp(c) -> Composition:
    return c if isinstance(c, Composition) else Composition(tuple(c))


def lookup(kind: str, *params) -> CatalogEntry | None:
    """Exact-parameter match, or None.

    ``lookup("Code", n, d, comp)`` finds explicit codes and ungrouped base
    sets; ``lookup("GDC", type, d, comp)`` grouped ones;
    ``lookup("BaseCodewordSet", n, d, comp)`` only base sets;
    ``lookup("Prestructure", type)`` and ``lookup("Design", type)``."""
    if kind in ("Code", "BaseCodewordSet"):
        n, d, comp = params
        comp = _comp(comp)
        kinds = ("Code", "BaseCodewordSet") if kind == "Code" else ("BaseCodewordSet",)
        for e in entries():
            if e.kind in kinds and e.params == (n, d, comp, None):
                return e
        return None
    if kind == "GDC":
        gtype, d, comp = params
        from .core import GddType
        want = str(GddType.parse(gtype)) if isinstance(gtype, str) else str(gtype)
        comp = _comp(comp)
        for e in entries():
            if e.kind in ("Code", "BaseCodewordSet"):
                n, dd, cc, grp = e.params
                if grp is not None and dd == d and cc == comp and str(GddType.parse(grp)) == want:
                    return e
        return None
    if kind in ("Prestructure", "Design"):
        from .core import GddType
        (gtype,) = params
        want = str(GddType.parse(gtype)) if isinstance(gtype, str) else str(gtype)
        for e in entries():
            if e.kind == kind and e.params == (want,):
                return e
        return None
    raise ValueError(f"unknown catalog kind {kind!r}")


def code(n: int, d: int, comp):
    e = lookup("Code", n, d, comp)
    return None if e is None else e.build()


def gdc(gtype, d: int, comp):
    e = lookup("GDC", gtype, d, comp)
    return None if e is None else e.build()


def prestructure(gtype) -> BlockDesign | None:
    e = lookup("Prestructure", gtype)
    return None if e is None else e.build()


@functools.lru_cache(maxsize=None)
def generator_table() -> dict[int, int]:
    path = catalog_root() / "generators" / "prime-power"
    out = {}
    for ln in path.read_text().splitlines():
        if ln.strip() and not ln.startswith("#"):
            n, a = map(int, ln.split())
            out[n] = a
    return out


def verify_all() -> VerificationReport:
    """Build and verify every entry; one check per entry with its size."""
    checks = []
    for e in entries():
        try:
            obj = e.build()
        except (GdcError, ValueError) as err:
            checks.append(Check(e.id, False, str(err)))
            continue
        size = len(obj.blocks) if isinstance(obj, BlockDesign) else len(obj)
        ok = e.expected_size is None or size == e.expected_size
        checks.append(Check(e.id, ok, size))
    try:
        from .gdcbuild import generator_conditions
        from .algebra import make_field
        bad = [n for n, a in generator_table().items() if generator_conditions(make_field(n), a)]
        checks.append(Check("generators/prime-power", not bad, bad or len(generator_table())))
    except (GdcError, ValueError) as err:
        checks.append(Check("generators/prime-power", False, str(err)))
    return VerificationReport(tuple(checks))


def seed_design_library(path) -> int:
    """Copy the shipped complete designs into ``path``; returns the number
    of files written (unchanged files are left alone)."""
    dest = Path(path)
    dest.mkdir(parents=True, exist_ok=True)
    written = 0
    for e in entries():
        if e.kind != "Design":
            continue
        e.build()
        target = dest / e.id
        text = e.text()
        if target.exists() and target.read_text() == text:
            continue
        formats._atomic_write(target, text)
        formats.read_design(target)
        written += 1
    return written
