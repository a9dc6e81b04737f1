"""Configuration loading.

All expected values live in the versioned YAML file shipped with the
package (``exceis/data/config.yaml``): root-system tables, multiplicity
tables, per-case row expectations, convergence thresholds, the archimedean
recipe catalog, and the algebra-suite parameters.  Code never hardcodes an
expected value; it recomputes and compares against this file.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from .archmult import MatrixRecipe, RecipeCatalog, parse_tokens
from .eiscalc import AbsoluteOracle, BlockRule
from .exactnum import AffineForm
from .rootsys import RootSystem

CONFIG_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass
class EisCheck:
    threshold: Fraction
    status: str
    root: int | None = None
    scale: Fraction | None = None       # override of the system print scale
    functional: tuple[Fraction, ...] | None = None
    printed: bool = True


@dataclass
class PairingCheck:
    root: int
    expect: AffineForm


@dataclass
class ArchSpec:
    recipe: str | None = None
    stated: str | None = None           # claim made without a printed recipe
    min_vanishing_order: int | None = None


@dataclass
class RowSpec:
    word: tuple[int, ...]
    assoc: tuple[int, ...] | None = None
    action: dict[int, tuple[int, int]] | None = None   # r_i -> (sign, r_j)
    trace: list[tuple[int, AffineForm]] | None = None
    lambda_prime: list[AffineForm] | None = None
    pairings: list[PairingCheck] = field(default_factory=list)
    eis: list[EisCheck] = field(default_factory=list)
    intertwiner_local: str | None = None
    intertwiner_global: str | None = None
    cfunction: list[str] | None = None          # printed finite factors
    cfunction_arch: list[str] | None = None     # printed archimedean factors
    order_total: int | None = None
    order_symbols: dict[str, Fraction] | None = None
    arch: ArchSpec | None = None
    conclusion: str = "Contributes"
    external: list[str] = field(default_factory=list)
    note: str = ""


@dataclass
class TableSpec:
    target: str
    kind: str = "constant-term"       # or "census"
    rows: list[RowSpec] = field(default_factory=list)


@dataclass
class CaseSpec:
    name: str
    system: str
    source: str
    s0: Fraction
    kind: str                          # "value" | "residue"
    lambda_printed: list[AffineForm] | None
    etale_variant: str | None          # for zetaE/zetaF factors
    oracle: str | None
    tables: list[TableSpec]
    aliases: list[str] = field(default_factory=list)


@dataclass
class ModulusCheck:
    system: str
    parabolic: str
    expect: Fraction


@dataclass
class UnprintedArch:
    case: str
    word: tuple[int, ...]
    name: str
    claim: str


@dataclass
class ClaimsSpec:
    count: int
    seed: int
    primes: list[int]
    qxf_disc: int
    field_minpoly: list[Fraction]


def _fr(x) -> Fraction:
    return Fraction(str(x))


def _parse_affine(x) -> AffineForm:
    return AffineForm.parse(str(x))


class Config:
    def __init__(self, raw: dict, source: str):
        if raw.get("version") != CONFIG_VERSION:
            raise ConfigError(f"config version {raw.get('version')} != {CONFIG_VERSION}")
        self.source = source
        self.raw = raw
        self._systems: dict[str, RootSystem] = {}
        self._system_rules: dict[str, dict[Fraction, list]] = {}
        self.system_aliases: dict[str, str] = {}
        for name, spec in raw["systems"].items():
            for alias in spec.get("aliases", []):
                self.system_aliases[alias] = name
        self.cases: dict[str, CaseSpec] = {}
        self.case_aliases: dict[str, str] = {}
        for name, spec in raw["cases"].items():
            cs = self._parse_case(name, spec)
            self.cases[name] = cs
            for alias in cs.aliases:
                self.case_aliases[alias] = name
        self.modulus_checks = [ModulusCheck(m["system"], m["parabolic"], _fr(m["expect"]))
                               for m in raw.get("modulus_checks", [])]
        self._catalog: RecipeCatalog | None = None
        self.unprinted_arch = [UnprintedArch(u["case"], tuple(u["word"]), u["name"], u["claim"])
                               for u in raw.get("arch", {}).get("unprinted", [])]
        self.algebras = {k: [int(g) for g in v]
                         for k, v in raw.get("algebras", {
                             "definite": [-1, -1, -1],
                             "split": [-1, -1, 1]}).items()}
        c = raw.get("claims", {})
        self.claims = ClaimsSpec(
            count=int(c.get("count", 1000)),
            seed=int(c.get("seed", 1)),
            primes=[int(p) for p in c.get("primes", [11, 13])],
            qxf_disc=int(c.get("qxf_disc", 2)),
            field_minpoly=[_fr(x) for x in c.get("field_minpoly", [-1, -2, 1])])
        self._oracles: dict[str, AbsoluteOracle] = {}

    # -- systems -------------------------------------------------------------

    def system_name(self, name: str) -> str:
        if name in self.raw["systems"]:
            return name
        if name in self.system_aliases:
            return self.system_aliases[name]
        raise ConfigError(f"unknown root system {name!r}")

    def system(self, name: str) -> RootSystem:
        name = self.system_name(name)
        if name not in self._systems:
            spec = self.raw["systems"][name]
            mult = {_fr(k): int(v) for k, v in spec.get("multiplicities", {}).items()}
            pscale = {_fr(k): _fr(v) for k, v in spec.get("print_scale", {}).items()}
            labels = {}
            for lab, radical in spec.get("parabolics", {}).items():
                labels[lab] = frozenset(int(i) for i in radical)
            sys = RootSystem(
                name,
                [[_fr(c) for c in row] for row in spec["simple_roots"]],
                multiplicities=mult, print_coroot_scale=pscale,
                nu=[_fr(c) for c in spec["nu"]] if "nu" in spec else None,
                parabolic_labels=labels)
            exp_rho = spec.get("rho_weighted")
            if exp_rho is not None:
                got = sys.rho_weighted()
                want = tuple(_fr(c) for c in exp_rho)
                if got != want:
                    raise ConfigError(f"{name}: weighted rho {got} != configured {want}")
            self._systems[name] = sys
        return self._systems[name]

    def system_rules(self, name: str, variant: str = "") -> dict[Fraction, BlockRule] | None:
        name = self.system_name(name)
        spec = self.raw["systems"][name]
        if "cblocks" not in spec:
            return None
        out = {}
        for norm2, templates in spec["cblocks"].items():
            out[_fr(norm2)] = BlockRule(
                [(t[0], _fr(t[1]), _fr(t[2]), int(t[3])) for t in templates],
                variant=variant)
        return out

    # -- cases ----------------------------------------------------------------

    def _parse_case(self, name: str, spec: dict) -> CaseSpec:
        tables = []
        for t in spec.get("tables", []):
            rows = []
            for r in t.get("rows", []):
                action = None
                if "action" in r:
                    action = {}
                    for k, v in r["action"].items():
                        v = str(v)
                        sign = -1 if v.startswith("-") else 1
                        action[int(str(k)[1:])] = (sign, int(v.lstrip("-r")))
                arch = None
                if "arch" in r:
                    a = r["arch"]
                    arch = ArchSpec(recipe=a.get("recipe"), stated=a.get("stated"),
                                    min_vanishing_order=a.get("min_vanishing_order"))
                eis = []
                for e in r.get("eis", []):
                    eis.append(EisCheck(
                        threshold=_fr(e["threshold"]), status=e["status"],
                        root=e.get("root"),
                        scale=_fr(e["scale"]) if "scale" in e else None,
                        functional=tuple(_fr(x) for x in e["functional"])
                        if "functional" in e else None,
                        printed=bool(e.get("printed", True))))
                order_total = None
                order_symbols = None
                if "order" in r:
                    order_total = int(r["order"]["total"])
                    if "symbols" in r["order"]:
                        order_symbols = {k: _fr(v) for k, v in r["order"]["symbols"].items()}
                rows.append(RowSpec(
                    word=tuple(r["word"]),
                    assoc=tuple(r["assoc"]) if "assoc" in r else None,
                    action=action,
                    trace=[(int(st[0]), _parse_affine(st[1])) for st in r["trace"]]
                    if "trace" in r else None,
                    lambda_prime=[_parse_affine(x) for x in r["lambda_prime"]]
                    if "lambda_prime" in r else None,
                    pairings=[PairingCheck(int(p["root"]), _parse_affine(p["expect"]))
                              for p in r.get("pairings", [])],
                    eis=eis,
                    intertwiner_local=(r.get("intertwiner") or {}).get("local"),
                    intertwiner_global=(r.get("intertwiner") or {}).get("global"),
                    cfunction=r.get("cfunction"),
                    cfunction_arch=r.get("cfunction_arch"),
                    order_total=order_total,
                    order_symbols=order_symbols,
                    arch=arch,
                    conclusion=r.get("conclusion", "Contributes"),
                    external=list(r.get("external", [])),
                    note=r.get("note", "")))
            tables.append(TableSpec(target=t["target"], kind=t.get("kind", "constant-term"),
                                    rows=rows))
        return CaseSpec(
            name=name, system=spec["system"], source=spec["source"],
            s0=_fr(spec["s0"]), kind=spec.get("kind", "value"),
            lambda_printed=[_parse_affine(x) for x in spec["lambda_printed"]]
            if "lambda_printed" in spec else None,
            etale_variant=spec.get("etale_variant"),
            oracle=spec.get("oracle"),
            tables=tables,
            aliases=list(spec.get("aliases", [])))

    def case(self, name: str) -> CaseSpec:
        if name in self.cases:
            return self.cases[name]
        if name in self.case_aliases:
            return self.cases[self.case_aliases[name]]
        raise ConfigError(f"unknown case {name!r}")

    # -- oracles ---------------------------------------------------------------

    def oracle(self, name: str) -> AbsoluteOracle:
        if name not in self._oracles:
            spec = self.raw["oracles"][name]
            self._oracles[name] = AbsoluteOracle(
                self.system(spec["absolute"]), self.system(spec["rational"]),
                kernel=[int(i) for i in spec["kernel"]],
                node_map={int(k): int(v) for k, v in spec["nodes"].items()},
                source_node=int(spec["source_node"]))
        return self._oracles[name]

    # -- archimedean catalog -----------------------------------------------------

    @property
    def catalog(self) -> RecipeCatalog:
        if self._catalog is None:
            cat = RecipeCatalog()
            for r in self.raw.get("arch", {}).get("recipes", []):
                cat.add(MatrixRecipe(case=r["case"], word=tuple(r["word"]),
                                     name=r["name"], tokens=parse_tokens(r["tokens"])))
            self._catalog = cat
        return self._catalog

    def arch_checks(self) -> list[dict]:
        return self.raw.get("arch", {}).get("recipes", [])


def default_config_path() -> Path:
    return Path(str(importlib.resources.files("exceis") / "data" / "config.yaml"))


_cache: dict[tuple[str, float], Config] = {}


def load_config(path: str | Path | None = None) -> Config:
    """Load (and cache) a config file; the cache keys on path and mtime, and
    the returned object is treated as immutable."""
    p = Path(path) if path else default_config_path()
    key = (str(p.resolve()), p.stat().st_mtime)
    if key not in _cache:
        with open(p, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
        _cache[key] = Config(raw, str(p))
    return _cache[key]
