"""Constant-term calculus for degenerate Eisenstein series.

The objects here are exact: exponent vectors are tuples of affine forms in
the complex parameter s, intertwining traces record every simple-reflection
step with its coroot pairing, and c-functions are canonical multisets of
zeta/Gamma/Pochhammer factors with affine arguments.

Analytic inputs are encoded as order lookups at rational points:

* zeta: simple pole at argument 1, simple zeros at the negative even
  integers, nonzero at every other rational argument (no nontrivial zeros
  lie on the real axis);
* Dedekind zeta of an etale algebra: expanded when the algebra is split,
  otherwise evaluated only where the Euler product converges or at the
  pole at 1 (field cases are opaque elsewhere -- orders there are never
  guessed);
* Gamma, Gamma_R, Gamma_C: poles at the usual nonpositive arguments,
  never zero;
* Pochhammer factors are polynomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import AffineForm
from .rootsys import (RootSystem, Vector, Word, dot, mat_vec, smul,
                      solve_linear, vadd)

# ---------------------------------------------------------------------------
# exponent vectors and traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordVector:
    """Vector of affine forms a_i*s + b_i in a root system's coordinates."""

    slope: Vector
    icept: Vector

    def __post_init__(self):
        if len(self.slope) != len(self.icept):
            raise ValueError("slope/intercept dimension mismatch")

    @classmethod
    def lambda_s(cls, system: RootSystem) -> "CoordVector":
        """The exponent delta_{P0}^{-1/2} |nu|^s, i.e. s*nu - rho."""
        if system.nu is None:
            raise ValueError(f"system {system.name} has no character nu configured")
        rho = system.rho_weighted()
        return cls(system.nu, smul(Fraction(-1), rho))

    def entries(self) -> tuple[AffineForm, ...]:
        return tuple(AffineForm(a, b) for a, b in zip(self.slope, self.icept))

    def eval(self, s0) -> Vector:
        s0 = Fraction(s0)
        return tuple(a * s0 + b for a, b in zip(self.slope, self.icept))

    def pairing(self, system: RootSystem, root: Vector) -> AffineForm:
        return system.coroot_pairing(self.slope, self.icept, root)

    def printed_pairing(self, system: RootSystem, root: Vector) -> AffineForm:
        return self.pairing(system, root).scale(system.print_scale(root))

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries()) + ")"


@dataclass(frozen=True)
class TraceStep:
    letter: int
    pairing: AffineForm          # coroot pairing before the reflection
    printed: AffineForm          # same, in the system's display normalization
    result: CoordVector


@dataclass(frozen=True)
class LambdaTrace:
    word: Word
    start: CoordVector
    steps: tuple[TraceStep, ...]

    @property
    def final(self) -> CoordVector:
        return self.steps[-1].result if self.steps else self.start


def apply_word(system: RootSystem, lam: CoordVector, word) -> LambdaTrace:
    """Apply a reduced word to an exponent vector, rightmost letter first,
    recording the coroot pairing at each step.

    The final vector is cross-checked against the matrix action of the word.
    """
    word = tuple(word)
    if not system.is_reduced(word):
        raise ValueError(f"word {list(word)} is not reduced")
    sl, ic = lam.slope, lam.icept
    steps = []
    for i in reversed(word):
        alpha = system.simples[i - 1]
        pairing = system.coroot_pairing(sl, ic, alpha)
        sl = system.reflect(alpha, sl)
        ic = system.reflect(alpha, ic)
        steps.append(TraceStep(i, pairing, pairing.scale(system.print_scale(alpha)),
                               CoordVector(sl, ic)))
    m = system.word_matrix(word)
    if (mat_vec(m, lam.slope), mat_vec(m, lam.icept)) != (sl, ic):
        raise AssertionError("trace disagrees with the matrix action")
    return LambdaTrace(word, lam, tuple(steps))


def shifted_exponent(system: RootSystem, lam: CoordVector, word) -> CoordVector:
    """w(lambda) + rho, the exponent of the intertwined section."""
    rho = system.rho_weighted()
    tr = apply_word(system, lam, word)
    return CoordVector(tr.final.slope, vadd(tr.final.icept, rho))


# ---------------------------------------------------------------------------
# zeta products
# ---------------------------------------------------------------------------

FINITE_KINDS = ("zeta", "zetaE", "zetaF", "zetaTheta")
ARCH_KINDS = ("gamma", "gammaR", "gammaC", "poch")
KINDS = FINITE_KINDS + ARCH_KINDS


@dataclass(frozen=True)
class ZetaFactor:
    """One zeta/Gamma/Pochhammer factor with an affine argument.

    `sym`/`sym_sign` carry an opaque symbolic shift of the argument (the
    weight parameters the source leaves undefined); such factors only get
    an order once the symbol is bound.  `variant` distinguishes the etale
    algebra behind zetaE/zetaF factors.
    """

    kind: str
    arg: AffineForm
    n: int = 0
    sym: str = ""
    sym_sign: int = 0
    variant: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == "poch" and self.n < 1:
            raise ValueError("pochhammer factor needs n >= 1")

    def sort_key(self):
        return (self.kind, self.arg.slope, self.arg.intercept, self.n,
                self.sym, self.sym_sign, self.variant)

    def is_finite(self) -> bool:
        return self.kind in FINITE_KINDS

    def __str__(self) -> str:
        name = self.kind
        arg = str(self.arg)
        if self.sym:
            arg += ("+" if self.sym_sign > 0 else "-") + self.sym
        if self.kind == "poch":
            return f"poch({arg};{self.n})"
        return f"{name}({arg})"


_FACTOR_RE = re.compile(
    r"^(zetaTheta|zetaE|zetaF|zeta|gammaR|gammaC|gamma|poch)"
    r"\(([^;()]+?)(?:([+-])([a-z]))?(?:;(\d+))?\)(?:\^(-?\d+))?$")


def parse_factor(text: str, variant: str = "") -> tuple[ZetaFactor, int]:
    """Parse "zeta(s-9)", "zeta(s)^-1", "gammaR(s-8+v)^-1", "poch(s/2-5/2;2)"."""
    m = _FACTOR_RE.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse factor {text!r}")
    kind, arg, symsign, sym, n, expo = m.groups()
    f = ZetaFactor(kind, AffineForm.parse(arg), n=int(n) if n else 0,
                   sym=sym or "", sym_sign=(1 if symsign == "+" else -1) if symsign else 0,
                   variant=variant if kind in ("zetaE", "zetaF") else "")
    return f, int(expo) if expo else 1


class ZetaProduct:
    """Canonical multiset of factors (merged arguments, zero exponents
    dropped)."""

    def __init__(self, factors: dict[ZetaFactor, int] | None = None):
        self.factors: dict[ZetaFactor, int] = {}
        for f, e in (factors or {}).items():
            if e != 0:
                self.factors[f] = self.factors.get(f, 0) + e
        self.factors = {f: e for f, e in self.factors.items() if e != 0}

    @classmethod
    def one(cls) -> "ZetaProduct":
        return cls()

    @classmethod
    def parse(cls, texts, variant: str = "") -> "ZetaProduct":
        out: dict[ZetaFactor, int] = {}
        for t in texts:
            f, e = parse_factor(t, variant)
            out[f] = out.get(f, 0) + e
        return cls(out)

    def __mul__(self, other: "ZetaProduct") -> "ZetaProduct":
        out = dict(self.factors)
        for f, e in other.factors.items():
            out[f] = out.get(f, 0) + e
        return ZetaProduct(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZetaProduct) and self.factors == other.factors

    def expanded(self) -> "ZetaProduct":
        """Expand zetaTheta(x) -> zeta(x)zeta(x-3) and split zetaE/zetaF
        over split algebras; idempotent."""
        out: dict[ZetaFactor, int] = {}

        def add(f, e):
            out[f] = out.get(f, 0) + e

        for f, e in self.factors.items():
            if f.kind == "zetaTheta":
                add(ZetaFactor("zeta", f.arg), e)
                add(ZetaFactor("zeta", f.arg.shift(-3)), e)
            elif f.kind == "zetaE" and f.variant == "split3":
                add(ZetaFactor("zeta", f.arg), 3 * e)
            elif f.kind == "zetaE" and f.variant == "QxF":
                add(ZetaFactor("zeta", f.arg), e)
                add(ZetaFactor("zetaF", f.arg, variant="field"), e)
            elif f.kind == "zetaF" and f.variant == "split":
                add(ZetaFactor("zeta", f.arg), 2 * e)
            else:
                add(f, e)
        return ZetaProduct(out)

    def finite_part(self) -> "ZetaProduct":
        return ZetaProduct({f: e for f, e in self.factors.items() if f.is_finite()})

    def arch_part(self) -> "ZetaProduct":
        return ZetaProduct({f: e for f, e in self.factors.items() if not f.is_finite()})

    def same_function(self, other: "ZetaProduct") -> bool:
        """Factor-multiset equality after expansion."""
        return self.expanded() == other.expanded()

    def sorted_factors(self) -> list[tuple[ZetaFactor, int]]:
        return sorted(self.factors.items(), key=lambda fe: fe[0].sort_key())

    def min_numerator_argument(self, s0) -> Fraction | None:
        """Smallest argument among expanded numerator zeta-type factors at s0;
        the global intertwining integral converges absolutely iff this
        exceeds 1."""
        s0 = Fraction(s0)
        vals = [f.arg.eval(s0) for f, e in self.expanded().factors.items()
                if e > 0 and f.is_finite()]
        return min(vals) if vals else None

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        num = [f"{f}" + (f"^{e}" if e != 1 else "")
               for f, e in self.sorted_factors() if e > 0]
        den = [f"{f}" + (f"^{-e}" if e != -1 else "")
               for f, e in self.sorted_factors() if e < 0]
        res = " ".join(num) if num else "1"
        if den:
            res += " / [" + " ".join(den) + "]"
        return res

    __repr__ = __str__


# ---------------------------------------------------------------------------
# order ledgers
# ---------------------------------------------------------------------------


def _zeta_order(a: Fraction) -> int:
    if a == 1:
        return -1
    if a < 0 and a.denominator == 1 and a.numerator % 2 == 0:
        return 1
    return 0


def _gamma_order(a: Fraction) -> int:
    return -1 if a <= 0 and a.denominator == 1 else 0


def _gamma_r_order(a: Fraction) -> int:
    return -1 if a <= 0 and a.denominator == 1 and a.numerator % 2 == 0 else 0


def _dedekind_field_order(a: Fraction) -> int | None:
    # Euler product converges for a > 1; simple pole at 1; opaque below.
    if a > 1:
        return 0
    if a == 1:
        return -1
    return None


class UndecidedOrderError(ValueError):
    pass


def factor_order(f: ZetaFactor, s0, symbols: dict[str, Fraction] | None = None) -> int | None:
    """Order of one factor at s0, or None when the analytic facts encoded
    here do not decide it."""
    s0 = Fraction(s0)
    a = f.arg.eval(s0)
    if f.sym:
        if not symbols or f.sym not in symbols:
            return None
        a += f.sym_sign * Fraction(symbols[f.sym])
    if f.kind == "zeta":
        return _zeta_order(a)
    if f.kind == "zetaTheta":
        return _zeta_order(a) + _zeta_order(a - 3)
    if f.kind == "zetaE":
        if f.variant == "split3":
            return 3 * _zeta_order(a)
        if f.variant == "QxF":
            fld = _dedekind_field_order(a)
            return None if fld is None else _zeta_order(a) + fld
        return _dedekind_field_order(a)
    if f.kind == "zetaF":
        if f.variant == "split":
            return 2 * _zeta_order(a)
        return _dedekind_field_order(a)
    if f.kind == "gamma":
        return _gamma_order(a)
    if f.kind == "gammaR":
        return _gamma_r_order(a)
    if f.kind == "gammaC":
        return _gamma_order(a)
    if f.kind == "poch":
        if f.arg.slope == 0:
            val = 1
            for k in range(f.n):
                val *= a + k
            if val == 0:
                raise ZeroDivisionError("identically zero pochhammer factor")
            return 0
        return sum(1 for k in range(f.n) if a + k == 0)
    raise AssertionError(f.kind)


@dataclass
class OrderEntry:
    factor: ZetaFactor
    exponent: int
    own_order: int | None      # order of the bare factor; None = undecided
    contribution: int | None   # own_order * exponent


@dataclass
class OrderReport:
    """Per-factor order ledger of a ZetaProduct at a rational point."""

    s0: Fraction
    entries: list[OrderEntry]
    decided_total: int
    undecided: int

    @property
    def total(self) -> int | None:
        return self.decided_total if self.undecided == 0 else None

    @property
    def classification(self) -> str:
        t = self.total
        if t is None:
            return "Undecided"
        if t == 0:
            return "Regular"
        if t == -1:
            return "SimplePole"
        if t < 0:
            return f"PoleOrder({-t})"
        return f"ZeroOrder({t})"

    def require_total(self) -> int:
        if self.undecided:
            bad = [str(e.factor) for e in self.entries if e.contribution is None]
            raise UndecidedOrderError(f"orders undecided for: {', '.join(bad)}")
        return self.decided_total


def order_report(p: ZetaProduct, s0,
                 symbols: dict[str, Fraction] | None = None) -> OrderReport:
    s0 = Fraction(s0)
    entries = []
    decided = 0
    undecided = 0
    for f, e in p.sorted_factors():
        o = factor_order(f, s0, symbols)
        c = None if o is None else o * e
        if c is None:
            undecided += 1
        else:
            decided += c
        entries.append(OrderEntry(f, e, o, c))
    return OrderReport(s0, entries, decided, undecided)


# ---------------------------------------------------------------------------
# convergence verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceVerdict:
    status: str                 # AbsolutelyConvergent | Boundary | NotConvergent
    margin: Fraction

    @classmethod
    def compare(cls, value: Fraction, threshold: Fraction) -> "ConvergenceVerdict":
        margin = Fraction(value) - Fraction(threshold)
        if margin > 0:
            return cls("AbsolutelyConvergent", margin)
        if margin == 0:
            return cls("Boundary", margin)
        return cls("NotConvergent", margin)


def convergence_verdict(pairing: AffineForm, s0, threshold) -> ConvergenceVerdict:
    return ConvergenceVerdict.compare(pairing.eval(s0), Fraction(threshold))


# ---------------------------------------------------------------------------
# c-functions
# ---------------------------------------------------------------------------


def gk_cfunction(system: RootSystem, lam: CoordVector, word) -> ZetaProduct:
    """Finite-place c-function over a split system: the product over
    positive roots flipped by w of zeta(<lam, a^vee>)/zeta(<lam, a^vee>+1)."""
    word = tuple(word)
    out: dict[ZetaFactor, int] = {}
    for root in system.inversions(word):
        z = lam.pairing(system, root)
        for f, e in ((ZetaFactor("zeta", z), 1), (ZetaFactor("zeta", z.shift(1)), -1)):
            out[f] = out.get(f, 0) + e
    return ZetaProduct(out)


class BlockRule:
    """Per-step factor rule for one root length of a rational system: a list
    of (kind, a, b, exponent) templates applied to the step's coroot pairing
    z as kind(a*z + b)^exponent."""

    def __init__(self, templates, variant: str = ""):
        self.templates = [(k, Fraction(a), Fraction(b), int(e))
                          for k, a, b, e in templates]
        self.variant = variant

    def block(self, z: AffineForm) -> ZetaProduct:
        out: dict[ZetaFactor, int] = {}
        for kind, a, b, e in self.templates:
            arg = z.scale(a) + AffineForm(0, b)
            f = ZetaFactor(kind, arg,
                           variant=self.variant if kind in ("zetaE", "zetaF") else "")
            out[f] = out.get(f, 0) + e
        return ZetaProduct(out)


def rational_cfunction(system: RootSystem, rules: dict[Fraction, BlockRule],
                       lam: CoordVector, word) -> ZetaProduct:
    """c-function of a rational (relative) system: the product of per-step
    blocks along the reduced word, each block a function of that step's
    coroot pairing, with the rule selected by the root length."""
    tr = apply_word(system, lam, word)
    prod = ZetaProduct.one()
    for step in tr.steps:
        alpha = system.simples[step.letter - 1]
        norm2 = dot(alpha, alpha)
        if norm2 not in rules:
            raise KeyError(f"no c-function rule for root length {norm2} in {system.name}")
        prod = prod * rules[norm2].block(step.pairing)
    return prod


# ---------------------------------------------------------------------------
# absolute oracle: restriction of a split absolute system to rational data
# ---------------------------------------------------------------------------


class AbsoluteOracle:
    """A split absolute root system fibred over a rational one.

    `kernel` lists the absolute simple roots restricting to zero (the
    anisotropic part); `node_map` sends each remaining absolute node to the
    rational simple root it restricts to.  Restriction is orthogonal
    projection onto the complement of the kernel span, rewritten in the
    rational coordinates; the fibre sizes must reproduce the rational
    multiplicity table.
    """

    def __init__(self, absolute: RootSystem, rational: RootSystem,
                 kernel: list[int], node_map: dict[int, int], source_node: int):
        self.absolute = absolute
        self.rational = rational
        self.kernel = list(kernel)
        self.node_map = dict(node_map)
        self.source_node = source_node
        self._restriction: dict[Vector, Vector | None] = {}
        self._build()

    def _inverse(self, gram):
        n = len(gram)
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(gram)]
        for i in range(n):
            piv = next(r for r in range(i, n) if aug[r][i] != 0)
            aug[i], aug[piv] = aug[piv], aug[i]
            d = aug[i][i]
            aug[i] = [x / d for x in aug[i]]
            for r in range(n):
                if r != i and aug[r][i] != 0:
                    f = aug[r][i]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[i])]
        return [row[n:] for row in aug]

    def _project(self, v: Vector) -> Vector:
        ker = self._kernel_roots
        if not ker:
            return v
        rhs = [dot(v, a) for a in ker]
        coeff = [sum(self._ker_gram_inv[i][j] * rhs[j] for j in range(len(ker)))
                 for i in range(len(ker))]
        out = list(v)
        for c, a in zip(coeff, ker):
            for d in range(len(out)):
                out[d] -= c * a[d]
        return tuple(out)

    def _build(self):
        self._kernel_roots = [self.absolute.simples[i - 1] for i in self.kernel]
        if self._kernel_roots:
            self._ker_gram_inv = self._inverse(
                [[dot(a, b) for b in self._kernel_roots] for a in self._kernel_roots])
        basis = [self._project(self.absolute.simples[i - 1])
                 for i in sorted(self.node_map)]
        targets = [self.rational.simples[self.node_map[i] - 1]
                   for i in sorted(self.node_map)]
        gram_inv = self._inverse([[dot(a, b) for b in basis] for a in basis])
        rational_roots = set(self.rational.roots)
        counts: dict[Vector, int] = {}
        for r in self.absolute.roots:
            p = self._project(r)
            if all(c == 0 for c in p):
                self._restriction[r] = None
                continue
            rhs = [dot(p, b) for b in basis]
            coeff = [sum(gram_inv[i][j] * rhs[j] for j in range(len(basis)))
                     for i in range(len(basis))]
            img = tuple(sum(coeff[j] * targets[j][d] for j in range(len(targets)))
                        for d in range(self.rational.dim))
            if img not in rational_roots:
                raise ValueError("restriction image is not a rational root")
            self._restriction[r] = img
            counts[img] = counts.get(img, 0) + 1
        for root in self.rational.roots:
            if counts.get(root, 0) != self.rational.multiplicity(root):
                raise ValueError(
                    f"fibre over {root} has size {counts.get(root, 0)}, "
                    f"expected multiplicity {self.rational.multiplicity(root)}")

    def fundamental_weight(self, node: int) -> Vector:
        sys = self.absolute
        gram = [[2 * dot(a, b) / dot(b, b) for a in sys.simples] for b in sys.simples]
        rhs = [Fraction(int(j + 1 == node)) for j in range(sys.rank)]
        coeff = solve_linear(gram, rhs)
        return tuple(sum(coeff[i] * sys.simples[i][d] for i in range(sys.rank))
                     for d in range(sys.dim))

    def lambda_abs(self) -> CoordVector:
        """s * omega_{source node} - rho on the absolute side."""
        omega = self.fundamental_weight(self.source_node)
        rho = self.absolute.rho_weighted()  # multiplicities are all 1 here
        return CoordVector(omega, smul(Fraction(-1), rho))

    def gk_restricted(self, rational_word) -> ZetaProduct:
        """gk_cfunction over the absolute system for (a lift of) a rational
        Weyl element: the flipped set is the union of fibres over the
        rational inversion set."""
        flipped = set(self.rational.inversions(tuple(rational_word)))
        lam = self.lambda_abs()
        out: dict[ZetaFactor, int] = {}
        for r in self.absolute.positives:
            img = self._restriction.get(r)
            if img is None or img not in flipped:
                continue
            z = lam.pairing(self.absolute, r)
            for f, e in ((ZetaFactor("zeta", z), 1), (ZetaFactor("zeta", z.shift(1)), -1)):
                out[f] = out.get(f, 0) + e
        return ZetaProduct(out)


# ---------------------------------------------------------------------------
# intertwining verdicts
# ---------------------------------------------------------------------------


@dataclass
class IntertwinerVerdict:
    """Local and global behaviour of M(w) at s0.

    local_status: from the per-step coroot pairings (each simple-reflection
    integral converges iff its pairing is positive).
    global_order: exact order of the finite c-function at s0 when the rule
    table decides it; None otherwise.
    """

    local_status: str
    min_pairing: Fraction | None
    global_status: str
    global_order: int | None
    cfunction: ZetaProduct | None


def intertwiner_verdict(system: RootSystem, rules: dict[Fraction, BlockRule] | None,
                        lam: CoordVector, word, s0) -> IntertwinerVerdict:
    word = tuple(word)
    s0 = Fraction(s0)
    tr = apply_word(system, lam, word)
    vals = [st.pairing.eval(s0) for st in tr.steps]
    mn = min(vals) if vals else None
    if mn is None or mn > 0:
        local = "AbsolutelyConvergent"
    elif mn == 0:
        local = "Boundary"
    else:
        local = "NeedsContinuation"
    if rules is None:
        return IntertwinerVerdict(local, mn, "Unknown", None, None)
    c = rational_cfunction(system, rules, lam, word)
    rep = order_report(c, s0)
    order = rep.total
    mna = c.min_numerator_argument(s0)
    if not word:
        gstat = "AbsolutelyConvergent"
    elif mna is not None and mna > 1:
        gstat = "AbsolutelyConvergent"
    elif order is None:
        gstat = "Undecided"
    elif order < 0:
        gstat = f"PoleOrder({-order})"
    else:
        gstat = "DefinedByContinuation" if local == "NeedsContinuation" else "Regular"
    return IntertwinerVerdict(local, mn, gstat, order, c)
