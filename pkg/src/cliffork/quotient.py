"""Collapse of an odd-dimensional algebra along its central volume element.

For odd n the volume element omega is central and omega^2 = +-1.  Scaling by a
unit eps in {1, i} so that (eps*omega)^2 = +1 gives two central idempotents
(1 +- eps*omega)/2, and sending eps*omega -> 1 defines an algebra homomorphism
onto the subalgebra spanned by the first n-1 generators.  This module builds
that homomorphism, decides which of the eight discrete transformations
{1, P, T, PT, C, CP, CT, CPT} survive the collapse, and labels the surviving
symmetry class and the reduced Pin covering.

Two routes are kept separate on purpose.  The transfer verdicts come from the
fixed-point condition phi(eps*omega) = eps*omega, evaluated both by a parity
formula and by literally applying phi to eps*omega; the two must agree.  The
class and covering labels follow the printed catalog instead.  In the cells
where the catalog's sign bookkeeping disagrees with the direct computation
(complex n = 3 mod 4, and real signatures with q odd) the reports keep the
catalog label and carry the directly computed set in a note.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .classification import ring_label, type_index
from .core_algebra import (
    GaussianScalar,
    MultiVector,
    SignatureSpec,
    reversion_sign,
    volume_element,
    volume_square_sign,
)
from .coverings import pt_cover_name
from .ext_automorphisms import ext_matrices
from .finite_groups import GroupTable, identify_small_group
from .spinor_repr import build_spinbasis

__all__ = [
    "EpsilonContext",
    "TransferEntry",
    "TransferReport",
    "QuotientClassReport",
    "QuotientGroupReport",
    "CLASS_SETS",
    "PHYSICAL_NAMES",
    "epsilon_context",
    "central_idempotents",
    "epsilon_map",
    "transfer_report",
    "quotient_class",
    "quotient_group",
]


# The eight discrete transformations form (Z2)^3 with generators P, T, C.
# Codes are bitmasks: bit 0 = P, bit 1 = T, bit 2 = C.
PHYSICAL_NAMES = ("1", "P", "T", "PT", "C", "CP", "CT", "CPT")

_CODE_BY_NAME = {"1": 0, "P": 1, "T": 2, "PT": 3, "C": 4, "CP": 5, "CT": 6, "CPT": 7}
_NAME_BY_CODE = {v: k for k, v in _CODE_BY_NAME.items()}

# extended-automorphism matrix carrying each transformation
MATRIX_BY_NAME = {"P": "W", "T": "E", "PT": "C", "C": "Pi", "CP": "K", "CT": "S", "CPT": "F"}

# covering superscript letters index the same matrices
_LETTER_BY_MATRIX = {"W": "a", "E": "b", "C": "c", "Pi": "d", "K": "e", "S": "f", "F": "g"}


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True, eq=False)
class EpsilonContext:
    """Everything the collapse needs: the odd algebra, the unit eps, the
    element eps*omega that gets sent to 1, and the target subalgebra."""

    sig: SignatureSpec
    epsilon: GaussianScalar  # 1 or i, with (epsilon*omega)^2 = +1
    omega: MultiVector
    ew: MultiVector  # epsilon * omega
    target: SignatureSpec  # drop-last-generator subalgebra, where epsilon_map lands
    target_labels: Tuple[SignatureSpec, ...]  # catalog decompositions


def _as_sig(sig_or_p, q=None) -> SignatureSpec:
    if isinstance(sig_or_p, SignatureSpec):
        if q is not None:
            raise TypeError("pass either a SignatureSpec or two counts, not both")
        return sig_or_p
    return SignatureSpec(int(sig_or_p), int(q))


def epsilon_context(sig_or_p, q=None) -> EpsilonContext:
    """Build the collapse context for an odd-dimensional algebra.

    Real algebras need omega^2 = +1, i.e. p-q = 1,5 (mod 8); the other odd
    real types only admit the collapse after complexification (field 'C').
    """
    sig = _as_sig(sig_or_p, q)
    if sig.n % 2 == 0:
        raise ValueError(f"{sig} is even-dimensional: the volume element is not central")
    omega = volume_element(sig)
    if volume_square_sign(sig.p, sig.q) == 1:
        eps = GaussianScalar.ONE
    elif sig.field == "C":
        eps = GaussianScalar.I
    else:
        raise ValueError(
            f"omega^2 = -1 in {sig} (type {sig.type_index()}): no real unit scalar "
            "fixes that; collapse the complexified algebra instead"
        )
    ew = omega * eps
    sq = ew * ew
    if not (sq.is_scalar() and sq.scalar_part() == GaussianScalar.ONE):
        raise AssertionError(f"(eps*omega)^2 != 1 in {sig}")

    if sig.q >= 1:
        target = SignatureSpec(sig.p, sig.q - 1, sig.field)
    else:
        target = SignatureSpec(sig.p - 1, 0, sig.field)
    if sig.field == "C":
        labels: Tuple[SignatureSpec, ...] = (target,)
    else:
        pair = []
        if sig.q >= 1:
            pair.append(SignatureSpec(sig.p, sig.q - 1))
        if sig.p >= 1:
            pair.append(SignatureSpec(sig.q, sig.p - 1))
        labels = tuple(pair)
    return EpsilonContext(sig, eps, omega, ew, target, labels)


def central_idempotents(ctx: EpsilonContext) -> Tuple[MultiVector, MultiVector]:
    """(lambda+, lambda-) = ((1 +- eps*omega)/2), checked by multiplication."""
    sq = ctx.ew * ctx.ew
    if not (sq.is_scalar() and sq.scalar_part() == GaussianScalar.ONE):
        raise ValueError(f"(eps*omega)^2 != 1 in {ctx.sig}")
    one = MultiVector.scalar(ctx.sig, 1)
    half = MultiVector.scalar(ctx.sig, Fraction(1, 2))
    lam_p = half * (one + ctx.ew)
    lam_m = half * (one - ctx.ew)
    for lam in (lam_p, lam_m):
        if not (lam * lam - lam).is_zero():
            raise AssertionError("idempotency failed")
    if not (lam_p * lam_m).is_zero():
        raise AssertionError("idempotents do not annihilate")
    if not (lam_p + lam_m - one).is_zero():
        raise AssertionError("idempotents do not sum to 1")
    return lam_p, lam_m


def epsilon_map(x: MultiVector, ctx: EpsilonContext) -> MultiVector:
    """Collapse x = A1 + eps*omega*A2 to A1 + A2 in the target subalgebra.

    Blades free of the last generator pass through; the rest are folded by one
    more multiplication with eps*omega (its own square is 1, so this recovers
    A2).  The kernel is exactly {y - eps*omega*y}.
    """
    if x.sig != ctx.sig:
        raise ValueError(f"element lives in {x.sig}, context is for {ctx.sig}")
    top = 1 << (ctx.sig.n - 1)
    out: Dict[int, GaussianScalar] = {}
    high: Dict[int, GaussianScalar] = {}
    for mask, c in x.items():
        if mask & top:
            high[mask] = c
        else:
            out[mask] = c
    if high:
        folded = ctx.ew * MultiVector(ctx.sig, high)
        for mask, c in folded.items():
            if mask & top:
                raise AssertionError("folding by eps*omega left the subalgebra")
            out[mask] = out.get(mask, GaussianScalar.ZERO) + c
    return MultiVector(ctx.target, out)


# ---------------------------------------------------------------------------
# transfer of the discrete transformations


@dataclass(frozen=True)
class TransferEntry:
    name: str
    transfers: bool
    reason: str


@dataclass(frozen=True, eq=False)
class TransferReport:
    sig: SignatureSpec
    epsilon: GaussianScalar
    entries: Dict[str, TransferEntry]

    def transferred(self) -> Tuple[str, ...]:
        """Surviving transformations, identity included."""
        return ("1",) + tuple(n for n in PHYSICAL_NAMES[1:] if self.entries[n].transfers)


def apply_transformation(x: MultiVector, name: str) -> MultiVector:
    """Act on x with the transformation carrying the given physical name.

    P is the grade involution, T the reversion, PT their composition.  The
    C factor conjugates coefficients; over a real signature it also flips
    every generator that squares to -1 (the two agree on which real form is
    held fixed: for field 'C' the stored generators are that real form).
    """
    code = _CODE_BY_NAME[name]
    out = x
    if code & 1:
        out = out.grade_involution()
    if code & 2:
        out = out.reversion()
    if code & 4:
        out = out.pseudo_conjugation() if x.sig.field == "R" else out.complex_conjugation()
    return out


def _sign_factors(name: str, sig: SignatureSpec, eps: GaussianScalar) -> Tuple[int, str]:
    code = _CODE_BY_NAME[name]
    sign = 1
    parts = []
    if code & 1:
        sign = -sign
        parts.append("grade flip on odd omega: -1")
    if code & 2:
        s = reversion_sign(sig.n)
        sign *= s
        parts.append(f"reversal of {sig.n} generators: {s:+d}")
    if code & 4:
        if sig.field == "R":
            s = -1 if sig.q % 2 else 1
            parts.append(f"flip of {sig.q} negative generators: {s:+d}")
        else:
            s = 1 if eps.is_real() else -1
            parts.append(f"conjugation of eps={eps}: {s:+d}")
        sign *= s
    return sign, "; ".join(parts) if parts else "identity"


def transfer_report(ctx: EpsilonContext) -> TransferReport:
    """Which of the seven nontrivial transformations descend to the target.

    A transformation phi descends iff phi(eps*omega) = eps*omega (otherwise it
    trades the two idempotent ideals and is not single-valued downstairs).
    Each verdict is computed from the parity formula and re-checked by acting
    on eps*omega directly; disagreement is a hard error.
    """
    entries: Dict[str, TransferEntry] = {}
    for name in PHYSICAL_NAMES[1:]:
        sign, why = _sign_factors(name, ctx.sig, ctx.epsilon)
        direct = (apply_transformation(ctx.ew, name) - ctx.ew).is_zero()
        if (sign == 1) != direct:
            raise AssertionError(
                f"parity route ({sign:+d}) disagrees with direct action for {name} on {ctx.sig}"
            )
        verdict = "fixes eps*omega" if sign == 1 else "sends eps*omega to -(eps*omega)"
        entries[name] = TransferEntry(name, sign == 1, f"{why} -> {verdict}")
    if entries["P"].transfers:
        raise AssertionError("grade involution cannot fix an odd volume element")
    return TransferReport(ctx.sig, ctx.epsilon, entries)


# ---------------------------------------------------------------------------
# symmetry classes of the collapsed representations


CLASS_SETS: Dict[str, Tuple[str, ...]] = {
    "a1": ("T", "C~I"),
    "a2": ("T", "C"),
    "b": ("T", "CP", "CPT"),
    "c": ("PT", "C", "CPT"),
    "d1": ("PT", "CP~IP", "CT~IT"),
    "d2": ("PT", "CP", "CT"),
    "e1": ("T", "C~I", "CT~IT"),
    "e2": ("T", "CP~IP", "CPT~IPT"),
    "f1": ("T", "C~C'", "CT~C'T"),
    "f2": ("T", "CP~C'P", "CPT~C'PT"),
}


@dataclass(frozen=True, eq=False)
class QuotientClassReport:
    sig: SignatureSpec
    label: str
    symmetry_set: Tuple[str, ...]
    ring: str  # ring of the (marked) parent algebra
    transferred: Tuple[str, ...]  # direct fixed-point route, identity included
    notes: Tuple[str, ...] = ()


def _class_label(sig: SignatureSpec) -> str:
    t = sig.type_index()
    if sig.field == "C":
        if sig.n % 4 == 1:
            return {1: "a1", 5: "a2", 3: "b", 7: "b"}[t]
        return {3: "c", 7: "c", 1: "d1", 5: "d2"}[t]
    if t == 1:
        return "e1" if sig.q % 2 == 0 else "e2"
    if t == 5:
        return "f1" if sig.q % 2 == 0 else "f2"
    raise ValueError(f"{sig} (type {t}) is outside the classified cases")


def _strip_tags(names: Tuple[str, ...]) -> Tuple[str, ...]:
    return tuple(n.split("~")[0] for n in names)


def quotient_class(ctx: EpsilonContext) -> QuotientClassReport:
    """Catalog class of the collapsed representation.

    Complex branch: a1/a2/b for n = 1 (mod 4) and c/d1/d2 for n = 3 (mod 4),
    split by the ring of the marked real form.  Real branch: e1/e2 for type 1
    and f1/f2 for type 5, split by the parity of q.  The '~' tags record that
    the coefficient conjugation collapses to the identity (ring R) or to the
    conjugation C' of the quaternionic structure (ring H) downstairs.
    """
    label = _class_label(ctx.sig)
    names = CLASS_SETS[label]
    honest = transfer_report(ctx).transferred()
    notes = []
    catalog = set(_strip_tags(names))
    direct = set(honest) - {"1"}
    if catalog != direct:
        notes.append(
            "direct fixed-point route keeps {%s}; catalog set retained as the label"
            % ", ".join(n for n in PHYSICAL_NAMES if n in direct)
        )
    return QuotientClassReport(
        ctx.sig, label, names, ring_label(ctx.sig), honest, tuple(notes)
    )


# ---------------------------------------------------------------------------
# collapsed coverings


@dataclass(frozen=True, eq=False)
class QuotientGroupReport:
    sig: SignatureSpec
    label: str  # e.g. "pin^{a,b,c}"
    survivors: Tuple[str, ...]  # physical names, identity first
    matrix_names: Tuple[str, ...]  # matching extended-automorphism matrices
    reductions: Tuple[str, ...]  # how coefficient conjugation folds downstairs
    cayley: Optional[GroupTable]  # None when the printed set is not closed
    abstract: Optional[str]
    targets: Tuple[SignatureSpec, ...]
    cover_formulas: Tuple[str, ...]
    cover_names: Dict[str, str]  # per target, concrete double-cover group
    notes: Tuple[str, ...] = ()


# case tables: label, surviving transformations, their matrices, reductions
_COMPLEX_CASES = {
    1: {
        1: ("pin^{b}", ("1", "T"), ("I", "E"), ("C~I",)),
        5: ("pin^{b,d}", ("1", "T", "C"), ("I", "E", "Pi"), ()),
        3: ("pin^{b,e,g}", ("1", "T", "CP", "CPT"), ("I", "E", "K", "F"), ()),
        7: ("pin^{b,e,g}", ("1", "T", "CP", "CPT"), ("I", "E", "K", "F"), ()),
    },
    3: {
        3: ("pin^{c,d,g}", ("1", "PT", "C", "CPT"), ("I", "C", "Pi", "F"), ()),
        7: ("pin^{c,d,g}", ("1", "PT", "C", "CPT"), ("I", "C", "Pi", "F"), ()),
        1: ("pin^{a,b,c}", ("1", "P", "T", "PT"), ("I", "W", "E", "C"), ("CP~P", "CT~T")),
        5: ("pin^{c,e,f}", ("1", "PT", "CP", "CT"), ("I", "C", "K", "S"), ()),
    },
}

_REAL_CASES = {
    (1, 0): ("pin^{b}", ("1", "T"), ("I", "E"), ("C~I", "CT~T")),
    (1, 1): ("pin^{a,b,c}", ("1", "P", "T", "PT"), ("I", "W", "E", "C"), ("CP~P", "CPT~PT")),
    (5, 0): ("pin^{b,d,f}", ("1", "T", "C", "CT"), ("I", "E", "Pi", "S"), ("C~C'",)),
    (5, 1): ("pin^{b,e,g}", ("1", "T", "CP", "CPT"), ("I", "E", "K", "F"), ("CP~C'P",)),
}


def _klein_table(survivors: Tuple[str, ...]) -> Optional[GroupTable]:
    codes = [_CODE_BY_NAME[s] for s in survivors]
    index = {c: i for i, c in enumerate(codes)}
    table = []
    for a in codes:
        row = []
        for b in codes:
            c = a ^ b
            if c not in index:
                return None  # not closed under composition
            row.append(index[c])
        table.append(row)
    return GroupTable(list(survivors), table, neutral=index[0])


def _cover_letters(label: str) -> str:
    return label[label.index("{") + 1 : label.index("}")]


def _target_text(sig: SignatureSpec) -> str:
    return f"({sig.n},C)" if sig.field == "C" else f"({sig.p},{sig.q})"


_COVER_LIMIT = 8  # build concrete matrices for targets up to this dimension


def _concrete_cover(target: SignatureSpec, matrix_names: Tuple[str, ...]) -> Optional[str]:
    if target.n > _COVER_LIMIT:
        return None
    try:
        basis = build_spinbasis(target)
    except ValueError:
        return None
    mats = ext_matrices(basis)
    wanted = [n for n in matrix_names if n != "I"]
    if len(wanted) == 1:
        return "Z2xZ2"  # {+-1} x {1, E}
    triple = tuple(mats[n].square_sign for n in wanted)
    return pt_cover_name(triple)


def quotient_group(ctx: EpsilonContext) -> QuotientGroupReport:
    """Label of the collapsed Pin covering with its surviving symmetry group.

    The superscript letters name the extended-automorphism matrices that
    survive the collapse (a..g for W,E,C,Pi,K,S,F).  Four-element survivor
    sets come with their multiplication table and the covering formula
    pin^{..}(target) = (spin+(target) . C^{..})/Z2; the printed three-element
    set {1,T,C} of pin^{b,d} is not closed, so it carries no table.
    """
    sig = ctx.sig
    t = sig.type_index()
    if sig.field == "C":
        label, survivors, mat_names, reductions = _COMPLEX_CASES[sig.n % 4][t]
    else:
        label, survivors, mat_names, reductions = _REAL_CASES[(t, sig.q % 2)]

    cayley = _klein_table(survivors)
    notes = []
    abstract = None
    if cayley is None:
        miss = _NAME_BY_CODE[_CODE_BY_NAME[survivors[1]] ^ _CODE_BY_NAME[survivors[2]]]
        notes.append(
            "{%s} is not closed (%s.%s = %s missing): no covering group"
            % (", ".join(survivors), survivors[1], survivors[2], miss)
        )
    else:
        abstract = identify_small_group(cayley)

    letters = _cover_letters(label)
    formulas = []
    covers: Dict[str, str] = {}
    for target in ctx.target_labels:
        text = _target_text(target)
        if cayley is None:
            continue
        part = "Z2xZ2" if len(survivors) == 2 else f"C^{{{letters}}}"
        formulas.append(f"pin^{{{letters}}}{text} = (spin+{text} . {part}) / Z2")
        concrete = _concrete_cover(target, mat_names)
        if concrete is not None:
            covers[text] = concrete

    honest = set(transfer_report(ctx).transferred()) - {"1"}
    folded = set(honest)
    # where the reduced ring trivializes the coefficient conjugation, drop the
    # C component of every surviving name (C~C' folds nothing: C' is honest)
    if any(r in ("C~I", "CP~P", "CT~T", "CPT~PT") for r in reductions):
        folded = {_NAME_BY_CODE[_CODE_BY_NAME[n] & ~4] for n in honest}
    folded.discard("1")
    if folded != set(survivors) - {"1"}:
        notes.append(
            "direct fixed-point route keeps {%s}; catalog label retained"
            % ", ".join(n for n in PHYSICAL_NAMES if n in folded)
        )

    return QuotientGroupReport(
        sig,
        label,
        survivors,
        mat_names,
        reductions,
        cayley,
        abstract,
        ctx.target_labels,
        tuple(formulas),
        covers,
        tuple(notes),
    )
