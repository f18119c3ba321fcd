"""Double coverings of the orthogonal group.

Three layers, all exact:

* ``pt_structure`` -- which of the eight coverings pin^{a,b,c}(p,q) exist,
  keyed on the signature type and the division ring.  The predicted
  (a,b,c) is cross-validated against the squares of the actual (W,E,C)
  matrices whenever a spinbasis is constructible, and the abstract double
  cover C^{a,b,c} is rebuilt from the matrix cocycle and identified.
* ``cpt_structure`` -- the quaternionic seven-sign extension with its five
  cover types; for ring R the PT report already carries everything.
* ``pin_membership`` / ``spin_membership`` -- brute-force Clifford-Lipschitz
  membership at low dimension, using exact multivector inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .classification import ring_label, type_index
from .core_algebra import (
    GaussianScalar,
    MultiVector,
    SignatureSpec,
    blade_product,
    volume_element,
    volume_square_sign,
)
from .ext_automorphisms import (
    MATRIX_NAMES,
    ExtMatrix,
    classify_ext_group,
    ext_matrices,
    matrix_C,
    matrix_E,
    matrix_W,
    matrix_comm_sign,
)
from .finite_groups import GroupTable, identify_small_group
from .spinor_repr import SpinBasis, SpinMatrix, build_spinbasis

_ONE = GaussianScalar.of(1)
_MINUS_ONE = GaussianScalar.of(-1)


# ---------------------------------------------------------------------------
# cover-group dictionaries

# double covers C^{a,b,c} of the reflection group {1,P,T,PT}, by the number
# of minus signs in (a,b,c); the odd-minus rows are the ones with PT = -TP
PT_COVER_BY_MINUS = {0: "Z2xZ2xZ2", 2: "Z4xZ2", 1: "D4", 3: "Q4"}

# the four-element automorphism group {I,W,E,C} itself (signs quotiented out
# of the commuting cases, kept in the anticommuting ones)
PT_AUT_BY_MINUS = {0: "Z2xZ2", 2: "Z4", 1: "D4/Z2", 3: "Q4/Z2"}

# seven-sign covers C^{a,...,g}; the four-minus pattern splits on abelianness
CPT_COVER_BY_MINUS = {0: "Z2xZ2xZ2xZ2", 2: "D4xZ2", 6: "Q4xZ2"}
CPT_COVER_FOUR_MINUS = {True: "Z4xZ2xZ2", False: "*Z4xZ2xZ2"}

# expected abstract type of the order-16 double cover, per cover name; the
# starred group is the central product D4oZ4 (the 2x2 Pauli group)
CPT_ABSTRACT = {
    "Z2xZ2xZ2xZ2": "Z2xZ2xZ2xZ2",
    "Z4xZ2xZ2": "Z4xZ2xZ2",
    "Q4xZ2": "Q4xZ2",
    "D4xZ2": "D4xZ2",
    "*Z4xZ2xZ2": "D4oZ4",
}

# spin(n) for n <= 6 in unitary-group dress; metadata only
SPIN_UNITARY = {
    2: "U(1)",
    3: "Sp(1)~SU(2)",
    4: "SU(2)xSU(2)",
    5: "Sp(2)",
    6: "SU(4)",
}

_ALL_SIGNATURES = tuple(
    (a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)
)
A_PLUS_SET = tuple(s for s in _ALL_SIGNATURES if s[0] == 1)
A_MINUS_SET = tuple(s for s in _ALL_SIGNATURES if s[0] == -1)

# simple real types: the signature is pinned by (p mod 4, q mod 4)
_REAL_SIGNATURE = {
    0: {
        (0, 0): (1, 1, 1),
        (2, 2): (1, -1, -1),
        (3, 3): (1, -1, 1),
        (1, 1): (1, 1, -1),
    },
    2: {
        (2, 0): (-1, 1, -1),
        (0, 2): (-1, -1, 1),
        (3, 1): (-1, -1, -1),
        (1, 3): (-1, 1, 1),
    },
}


def minus_count(signature: Sequence[int]) -> int:
    return sum(1 for s in signature if s < 0)


def is_cliffordian(signature: Sequence[int]) -> bool:
    """PT = -TP rows: odd number of minus signs."""
    return minus_count(signature) % 2 == 1


def pt_cover_name(signature: Sequence[int]) -> str:
    if len(signature) != 3:
        raise ValueError("PT signature has three signs")
    return PT_COVER_BY_MINUS[minus_count(signature)]


def _sig_str(signature: Sequence[int]) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signature) + ")"


# ---------------------------------------------------------------------------
# the formal double cover, read off the matrices

_CODE = {"I": 0, "W": 1, "E": 2, "C": 3, "Pi": 4, "K": 5, "S": 6, "F": 7}


def signed_cover_group(
    mats: Dict[str, ExtMatrix], names: Sequence[str] = MATRIX_NAMES
) -> GroupTable:
    """Abstract group {+-1} x {I, named matrices} with the sign cocycle
    taken from the matrix products.

    This is the double cover itself, not the matrix group: collapsed
    realizations (several names landing on the same matrix up to sign)
    still produce the full-order table.
    """
    codes = sorted({0} | {_CODE[nm] for nm in names})
    code_set = set(codes)
    for a in codes:
        for b in codes:
            if a ^ b not in code_set:
                raise ValueError("matrix name set is not closed under composition")
    dim = next(iter(mats.values())).matrix.dim
    mat_by_code = {0: SpinMatrix.identity(dim)}
    for nm in names:
        mat_by_code[_CODE[nm]] = mats[nm].matrix
    cocycle: Dict[Tuple[int, int], int] = {}
    for a in codes:
        for b in codes:
            prod = mat_by_code[a] * mat_by_code[b]
            target = mat_by_code[a ^ b]
            if prod == target:
                cocycle[a, b] = 1
            elif prod == -target:
                cocycle[a, b] = -1
            else:
                raise AssertionError(
                    "matrix product leaves the signed span of the named matrices"
                )
    name_by_code = {v: k for k, v in _CODE.items()}
    elements = [(s, c) for c in codes for s in (1, -1)]
    index = {el: i for i, el in enumerate(elements)}
    labels = [
        ("+" if s > 0 else "-") + name_by_code[c] for s, c in elements
    ]
    table = [
        [
            index[(s1 * s2 * cocycle[c1, c2], c1 ^ c2)]
            for (s2, c2) in elements
        ]
        for (s1, c1) in elements
    ]
    return GroupTable(labels, table, index[(1, 0)])


# ---------------------------------------------------------------------------
# PT structure


@dataclass(frozen=True)
class CoveringReport:
    """Which double covers of the reflection group exist, and why.

    signature is the realized/forced sign vector when the clause pins one
    down ((a,b,c), or the seven-sign vector for CPT reports); admissible
    lists every vector the clause allows.  cover_group / cliffordian are
    set exactly when signature is.
    """

    sig: Optional[SignatureSpec]
    n: Optional[int]  # complex dimension, for reports over C
    field: str  # "R" | "C"
    ring: str
    signature: Optional[Tuple[int, ...]]
    admissible: Tuple[Tuple[int, ...], ...]
    cover_group: Optional[str]
    automorphism_group: Optional[str]
    cliffordian: Optional[bool]
    notes: Tuple[str, ...] = ()


def predicted_pt_signature(basis: SpinBasis) -> Tuple[int, int, int]:
    """(a,b,c) from the unit census alone, no matrix squaring.

    a is fixed by the type; b and c follow the census differences
    (skew: +squares minus -squares, sym likewise) mod 8, the skew product
    taking the E slot when the skew count is even and the C slot when odd.
    """
    sig = basis.sig
    t = type_index(sig.p, sig.q)
    if sig.n % 2:
        raise ValueError("census prediction needs even p+q")
    census = basis.unit_census()
    a = 1 if t in (0, 4) else -1
    skew_plus = (census.m - census.u) % 8 in (0, 1, 4, 5)
    sym_plus = (census.v - census.l) % 8 in (0, 1, 4, 5)
    skew_sign = 1 if skew_plus else -1
    sym_sign = 1 if sym_plus else -1
    if (census.u + census.m) % 2 == 0:
        return (a, skew_sign, sym_sign)
    return (a, sym_sign, skew_sign)


def pt_profile(basis: SpinBasis) -> Dict[str, object]:
    """Computed PT data for one basis: matrix squares, commutation, and the
    identified double cover; internal consistency is asserted."""
    w = matrix_W(basis)
    e = matrix_E(basis)
    c = matrix_C(basis)
    signature = (w.square_sign, e.square_sign, c.square_sign)
    comm = {
        ("W", "E"): matrix_comm_sign(w.matrix, e.matrix),
        ("W", "C"): matrix_comm_sign(w.matrix, c.matrix),
        ("E", "C"): matrix_comm_sign(e.matrix, c.matrix),
    }
    abelian = all(v == 1 for v in comm.values())
    mats = {"W": w, "E": e, "C": c}
    cover = identify_small_group(signed_cover_group(mats, ("W", "E", "C")))
    expected = pt_cover_name(signature)
    if cover != expected:
        raise AssertionError(
            f"{basis.sig}: cover table says {expected}, matrices build {cover}"
        )
    if abelian != (minus_count(signature) % 2 == 0):
        raise AssertionError(
            f"{basis.sig}: commutation defies the sign-count parity"
        )
    return {
        "matrices": mats,
        "signature": signature,
        "commutation": comm,
        "abelian": abelian,
        "cover_group": cover,
    }


def _pt_complex(n: int) -> CoveringReport:
    if n < 0:
        raise ValueError("complex dimension must be nonnegative")
    if n % 4 in (0, 1):
        signature = (1, 1, 1)
    else:
        signature = (-1, -1, -1)
    cover = pt_cover_name(signature)
    notes = [
        f"over C the two covers alternate with n mod 4: {_sig_str(signature)}",
        f"pin^{{a,b,c}}({n},C) = (spin+({n},C) . {cover}) / Z2",
    ]
    if n % 2:
        notes.append(
            f"odd n: pin^{{a,b,c}}({n},C) = pin^{{a,b,c}}({n - 1},C) "
            f"u w.pin^{{a,b,c}}({n - 1},C)"
        )
    return CoveringReport(
        sig=None,
        n=n,
        field="C",
        ring="C",
        signature=signature,
        admissible=(signature,),
        cover_group=cover,
        automorphism_group=PT_AUT_BY_MINUS[minus_count(signature)],
        cliffordian=is_cliffordian(signature),
        notes=tuple(notes),
    )


def _semisimple_admissible(sig: SignatureSpec) -> Tuple[Tuple[Tuple[int, ...], ...], List[str]]:
    p, q = sig.p, sig.q
    addenda = []
    if q >= 1:
        addenda.append((p, q - 1))
    if p >= 1:
        addenda.append((q, p - 1))
    admissible: List[Tuple[int, ...]] = []
    notes = []
    for ap, aq in addenda:
        at = type_index(ap, aq)
        block = A_PLUS_SET if at in (0, 4) else A_MINUS_SET
        tag = "a=+" if at in (0, 4) else "a=-"
        notes.append(
            f"ideal factor Cl({ap},{aq}) (type {at}) admits the {tag} four-set"
        )
        for s in block:
            if s not in admissible:
                admissible.append(s)
    return tuple(admissible), notes


def pt_structure(sig_or_n, q: Optional[int] = None, basis: Optional[SpinBasis] = None) -> CoveringReport:
    """PT-structure report for Cl(p,q), or for the complex algebra when a
    bare dimension is given.

    Simple even types pin the signature down; the quaternionic types admit a
    four-set (the basis census selects the realized member); semi-simple
    types report the admissibility sets contributed by their two ideal
    factors; the complex-ring types reduce to the complex rule one
    dimension lower.  Whenever a spinbasis is available the prediction is
    checked against the actual (W,E,C) squares.
    """
    if isinstance(sig_or_n, SignatureSpec):
        sig = sig_or_n
    elif q is None:
        return _pt_complex(int(sig_or_n))
    else:
        sig = SignatureSpec(int(sig_or_n), int(q))
    if sig.field == "C":
        return _pt_complex(sig.n)

    p, qq = sig.p, sig.q
    t = type_index(p, qq)
    ring = ring_label(p, qq)
    notes: List[str] = []
    signature: Optional[Tuple[int, ...]] = None
    admissible: Tuple[Tuple[int, ...], ...]

    if t in (0, 2):
        signature = _REAL_SIGNATURE[t][(p % 4, qq % 4)]
        admissible = (signature,)
        notes.append(
            f"ring R, type {t}: signature pinned by (p,q) = "
            f"({p % 4},{qq % 4}) mod 4"
        )
    elif t in (4, 6):
        admissible = A_PLUS_SET if t == 4 else A_MINUS_SET
        notes.append(
            f"ring H, type {t}: every {'a=+' if t == 4 else 'a=-'} signature "
            "is admissible; the unit census picks the realized one"
        )
    elif t in (1, 5):
        admissible, add_notes = _semisimple_admissible(sig)
        notes.append(f"ring {ring}, type {t}: semi-simple, no single signature")
        notes.extend(add_notes)
    else:  # 3, 7
        inner = _pt_complex(sig.n - 1)
        signature = inner.signature
        admissible = (signature,)
        notes.append(
            f"ring C, type {t}: structure carried by pin^{{a,b,c}}"
            f"({sig.n - 1},C), here {_sig_str(signature)}"
        )

    if basis is None and t in (0, 2, 4, 6) and sig.n <= 10:
        basis = build_spinbasis(sig)
    if basis is not None and t in (0, 2, 4, 6):
        profile = pt_profile(basis)
        realized = profile["signature"]
        predicted = predicted_pt_signature(basis)
        if realized != predicted:
            raise AssertionError(
                f"{sig}: census predicts {_sig_str(predicted)}, matrices "
                f"square to {_sig_str(realized)}"
            )
        if signature is not None and realized != signature:
            raise AssertionError(
                f"{sig}: type table says {_sig_str(signature)}, matrices "
                f"square to {_sig_str(realized)}"
            )
        if realized not in admissible:
            raise AssertionError(
                f"{sig}: realized {_sig_str(realized)} is not admissible"
            )
        signature = realized
        notes.append(f"checked against basis {basis.name}")

    cover = pt_cover_name(signature) if signature else None
    aut = PT_AUT_BY_MINUS[minus_count(signature)] if signature else None
    if signature:
        notes.append(
            f"pin^{_sig_str(signature)}({p},{qq}) = "
            f"(spin+({p},{qq}) . {cover}) / Z2"
        )
    return CoveringReport(
        sig=sig,
        n=None,
        field="R",
        ring=ring,
        signature=signature,
        admissible=admissible,
        cover_group=cover,
        automorphism_group=aut,
        cliffordian=is_cliffordian(signature) if signature else None,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# CPT structure


def cpt_structure(sig_or_p, q: Optional[int] = None, basis: Optional[SpinBasis] = None) -> CoveringReport:
    """Seven-sign covering report.

    Ring R carries no extra covers: the PT report is returned as-is (with a
    note).  Ring H gets the five-cover table keyed on the minus-count of
    the realized (W,E,C,Pi,K,S,F) squares, the four-minus row splitting on
    abelianness; the abstract order-16 cover is rebuilt from the matrix
    cocycle and must match.
    """
    if isinstance(sig_or_p, SignatureSpec):
        sig = sig_or_p
    else:
        if q is None:
            raise TypeError("pass a SignatureSpec or both p and q")
        sig = SignatureSpec(int(sig_or_p), int(q))
    if sig.field == "C":
        raise ValueError(
            "CPT reports live on real signatures; mark the complex algebra"
        )
    ring = ring_label(sig.p, sig.q)
    if ring == "R":
        rep = pt_structure(sig, basis=basis)
        return CoveringReport(
            sig=rep.sig,
            n=rep.n,
            field=rep.field,
            ring=rep.ring,
            signature=rep.signature,
            admissible=rep.admissible,
            cover_group=rep.cover_group,
            automorphism_group=rep.automorphism_group,
            cliffordian=rep.cliffordian,
            notes=rep.notes
            + ("ring R: no new covers, reduced to the PT structure",),
        )
    if ring != "H":
        raise ValueError(
            f"CPT covering table needs ring R or H, got {ring} for {sig}"
        )
    if basis is None:
        basis = build_spinbasis(sig)
    mats = ext_matrices(basis)
    signature = tuple(mats[nm].square_sign for nm in MATRIX_NAMES)
    mc = minus_count(signature)
    if mc not in (0, 2, 4, 6):
        raise ValueError(
            f"{sig}: sign pattern {_sig_str(signature)} falls outside the "
            "five-cover table"
        )
    pairs = [(x, y) for i, x in enumerate(MATRIX_NAMES) for y in MATRIX_NAMES[i + 1:]]
    abelian = all(
        matrix_comm_sign(mats[x].matrix, mats[y].matrix) == 1 for x, y in pairs
    )
    if mc == 4:
        cover = CPT_COVER_FOUR_MINUS[abelian]
    else:
        cover = CPT_COVER_BY_MINUS[mc]
    abstract = identify_small_group(signed_cover_group(mats))
    if abstract != CPT_ABSTRACT[cover]:
        raise AssertionError(
            f"{sig}: cover table says {cover} (= {CPT_ABSTRACT[cover]}), "
            f"matrix cocycle builds {abstract}"
        )
    group_label = classify_ext_group(signature, abelian)
    notes = (
        f"ring H: minus-count {mc}, {'Abelian' if abelian else 'Non-Abelian'}",
        f"automorphism group {group_label}, double cover {cover} = {abstract}",
        f"basis {basis.name}",
    )
    return CoveringReport(
        sig=sig,
        n=None,
        field="R",
        ring=ring,
        signature=signature,
        admissible=(signature,),
        cover_group=cover,
        automorphism_group=group_label,
        cliffordian=not abelian,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Pin / Spin membership by brute force


def regular_representation(x: MultiVector) -> List[List[GaussianScalar]]:
    """Left-multiplication operator of x on the 2^n blade basis."""
    sig = x.sig
    dim = 1 << sig.n
    zero = GaussianScalar.of(0)
    out = [[zero] * dim for _ in range(dim)]
    for col in range(dim):
        for mask, coeff in x.items():
            res, sgn = blade_product(sig, mask, col)
            out[res][col] = out[res][col] + coeff * sgn
    return out


def multivector_inverse(x: MultiVector) -> Optional[MultiVector]:
    """Exact inverse via the regular representation, None when singular."""
    sig = x.sig
    dim = 1 << sig.n
    zero = GaussianScalar.of(0)
    rows = [list(r) for r in regular_representation(x)]
    rhs = [_ONE if i == 0 else zero for i in range(dim)]
    # Gaussian elimination over the exact scalars
    perm = list(range(dim))
    for col in range(dim):
        pivot = next((r for r in range(col, dim) if rows[r][col]), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = rows[col][col].inverse()
        rows[col] = [a * inv for a in rows[col]]
        rhs[col] = rhs[col] * inv
        for r in range(dim):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
                rhs[r] = rhs[r] - f * rhs[col]
    del perm
    coeffs = {mask: rhs[mask] for mask in range(dim) if rhs[mask]}
    return MultiVector(sig, coeffs)


def norm_scalar(x: MultiVector) -> Optional[GaussianScalar]:
    """N(x) = x * reversion(x) when that lands in the scalars, else None."""
    nm = x * x.reversion()
    if not nm.is_scalar():
        return None
    return nm.scalar_part()


_MEMBERSHIP_LIMIT = 4


def _membership(x: MultiVector, even_only: bool) -> bool:
    sig = x.sig
    if sig.n > _MEMBERSHIP_LIMIT:
        raise ValueError(
            f"brute-force membership is kept to p+q <= {_MEMBERSHIP_LIMIT}"
        )
    if x.is_zero():
        return False
    if even_only and any(g % 2 for g in x.grades()):
        return False
    inv = multivector_inverse(x)
    if inv is None:
        return False
    nv = norm_scalar(x)
    if nv is None or nv not in (_ONE, _MINUS_ONE):
        return False
    for i in range(1, sig.n + 1):
        image = x * MultiVector.unit(sig, i) * inv
        if any(g != 1 for g in image.grades()):
            return False
    return True


def pin_membership(x: MultiVector) -> bool:
    """x invertible, N(x) = +-1, and conjugation keeps every generator in
    the grade-1 span."""
    return _membership(x, even_only=False)


def spin_membership(x: MultiVector) -> bool:
    """Pin membership plus even grading."""
    return _membership(x, even_only=True)


@dataclass(frozen=True)
class PinElement:
    value: MultiVector
    norm: GaussianScalar


def pin_element(x: MultiVector) -> PinElement:
    """Validated Pin member; also checks the twisted action (grade-involuted
    left factor), which must land in grade 1 as well."""
    if not pin_membership(x):
        raise ValueError("not a Pin element")
    inv = multivector_inverse(x)
    for i in range(1, x.sig.n + 1):
        image = x.grade_involution() * MultiVector.unit(x.sig, i) * inv
        if any(g != 1 for g in image.grades()):
            raise ValueError("twisted action leaves the grade-1 span")
    return PinElement(x, norm_scalar(x))


# ---------------------------------------------------------------------------
# odd-dimensional decomposition


@dataclass(frozen=True)
class OddDecomposition:
    sig: SignatureSpec
    omega_square: int
    branch: str  # "i" when w^2 = -1, "e" (double unit) when w^2 = +1
    identities: Tuple[str, ...]
    unitary_label: Optional[str]


_UNITARY_SPLIT = {
    (3, 0): "SU(2) u iSU(2)",
    (0, 3): "SU(2) u eSU(2)",
    (5, 0): "Sp(2) u eSp(2)",
    (0, 5): "Sp(2) u iSp(2)",
}


def odd_dimensional_decomposition_report(sig_or_p, q: Optional[int] = None) -> OddDecomposition:
    """Pin(p,q) split along the volume element, odd dimensions only.

    The generic identities hold for every odd type; the four low-dimensional
    cases additionally carry their unitary-group dress, the branch letter
    ('i' vs the double unit 'e') decided by the sign of w^2.
    """
    if isinstance(sig_or_p, SignatureSpec):
        sig = sig_or_p
    else:
        if q is None:
            raise TypeError("pass a SignatureSpec or both p and q")
        sig = SignatureSpec(int(sig_or_p), int(q))
    p, qq, n = sig.p, sig.q, sig.n
    if n % 2 == 0:
        raise ValueError(f"Cl({p},{qq}) is even-dimensional, nothing to split")
    w2 = volume_square_sign(p, qq)
    if n <= 11:
        direct = (volume_element(sig) ** 2).scalar_part()
        if direct != GaussianScalar.of(w2):
            raise AssertionError("volume square sign disagrees with the blades")
    branch = "i" if w2 == -1 else "e"
    identities = [f"Pin({p},{qq}) = Spin({p},{qq}) u w.Spin({p},{qq})"]
    if qq >= 1:
        identities.append(
            f"Pin({p},{qq}) = Pin({p},{qq - 1}) u w.Pin({p},{qq - 1})"
        )
    if p >= 1:
        identities.append(
            f"Pin({p},{qq}) = Pin({qq},{p - 1}) u w.Pin({qq},{p - 1})"
        )
    unitary = _UNITARY_SPLIT.get((p, qq))
    if unitary is not None:
        tail = unitary.split(" u ")[1]
        if not tail.startswith(branch):
            raise AssertionError("unitary split letter defies the volume square")
    return OddDecomposition(
        sig=sig,
        omega_square=w2,
        branch=branch,
        identities=tuple(identities),
        unitary_label=unitary,
    )
