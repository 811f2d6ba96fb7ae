"""Shift numbers, bigraded Hodge polynomials, and the wreath product formula.

This module works on abstract sector data: for each conjugacy class (c) and
each component j of its fixed set, the bigraded dimensions h^{s,t} of the
sector's Dolbeault cohomology, the rotation angles of c on the normal
directions (rationals in (0,1]), and the component's complex dimension.
Nothing here touches simplicial complexes -- the product formula for shifted
Hodge polynomials is an identity in this data, and that identity is what
gets verified.

Conventions, fixed once:

* the shift number of a sector component is the sum of its angles; all
  shifts must be integers (the half-integer case is rejected, not
  approximated),
* dimensions are unsigned; the sign bookkeeping of the product formula is
  carried by substituting (-x,-y) into assembled polynomials and by the
  exponent -(-1)^(s+t) h^{s,t} on the right side, both applied literally,
* in the right side's (xy)^((r-1)d/2) the index r is the cycle length, read
  off the outer product index n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AngleOutOfRange,
    InputError,
    NonIntegerExponentOfXY,
    NonIntegerShift,
    NonInvertibleSeries,
)
from .series import TruncatedSeries


# ---------------------------------------------------------------------------
# bigraded polynomials in x, y


def _normalized_terms(pairs) -> tuple:
    acc: dict = {}
    for (s, t), coeff in pairs:
        if not isinstance(s, int) or not isinstance(t, int) or s < 0 or t < 0:
            raise InputError(f"bidegree ({s},{t}) must be nonnegative integers")
        value = acc.get((s, t), Fraction(0)) + Fraction(coeff)
        acc[(s, t)] = value
    return tuple(
        ((s, t), c) for (s, t), c in sorted(acc.items()) if c != 0
    )


@dataclass(frozen=True)
class HodgePolynomial:
    """A polynomial sum of c_{s,t} x^s y^t with exact rational coefficients."""

    terms: tuple  # sorted ((s, t), Fraction), no zero coefficients

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalized_terms(self.terms))

    @classmethod
    def zero(cls) -> "HodgePolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "HodgePolynomial":
        return cls((((0, 0), 1),))

    @classmethod
    def monomial(cls, s: int, t: int, coeff=1) -> "HodgePolynomial":
        return cls((((s, t), coeff),))

    @classmethod
    def from_dict(cls, mapping) -> "HodgePolynomial":
        return cls(tuple(mapping.items()))

    def __add__(self, other: "HodgePolynomial") -> "HodgePolynomial":
        return HodgePolynomial(self.terms + other.terms)

    def __sub__(self, other: "HodgePolynomial") -> "HodgePolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "HodgePolynomial") -> "HodgePolynomial":
        out = []
        for (s1, t1), c1 in self.terms:
            for (s2, t2), c2 in other.terms:
                out.append(((s1 + s2, t1 + t2), c1 * c2))
        return HodgePolynomial(tuple(out))

    def scale(self, value) -> "HodgePolynomial":
        v = Fraction(value)
        return HodgePolynomial(tuple((k, v * c) for k, c in self.terms))

    def shift_by(self, k: int) -> "HodgePolynomial":
        """Multiply by (xy)^k: every bidegree (s,t) moves to (s+k, t+k)."""
        if not isinstance(k, int):
            raise NonIntegerShift(f"shift must be an integer, got {k!r}")
        return HodgePolynomial(
            tuple(((s + k, t + k), c) for (s, t), c in self.terms)
        )

    def substitute_neg(self) -> "HodgePolynomial":
        """The polynomial at (-x, -y): each term picks up (-1)^(s+t)."""
        return HodgePolynomial(
            tuple(((s, t), c if (s + t) % 2 == 0 else -c) for (s, t), c in self.terms)
        )

    def evaluate(self, x, y) -> Fraction:
        xv, yv = Fraction(x), Fraction(y)
        return sum(
            (c * xv**s * yv**t for (s, t), c in self.terms), Fraction(0)
        )

    def to_json(self) -> dict:
        return {f"{s},{t}": str(c) for (s, t), c in self.terms}

    def __repr__(self):
        return f"HodgePolynomial({self.to_json()})"


@dataclass(frozen=True)
class HodgeSeries:
    """A q-series whose coefficients are HodgePolynomials, truncated."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise InputError("a series needs at least the constant coefficient")
        for c in coeffs:
            if not isinstance(c, HodgePolynomial):
                raise InputError(f"coefficients must be HodgePolynomials, got {c!r}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def one(cls, order: int) -> "HodgeSeries":
        if order < 0:
            raise InputError("truncation order must be >= 0")
        return cls(
            (HodgePolynomial.one(),)
            + (HodgePolynomial.zero(),) * order
        )

    def _same_order(self, other: "HodgeSeries") -> None:
        if self.order != other.order:
            raise InputError(
                f"series orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: "HodgeSeries") -> "HodgeSeries":
        self._same_order(other)
        return HodgeSeries(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __mul__(self, other: "HodgeSeries") -> "HodgeSeries":
        self._same_order(other)
        out = [HodgePolynomial.zero() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coefficients):
            if not a.terms:
                continue
            for j in range(self.order + 1 - i):
                b = other.coefficients[j]
                if b.terms:
                    out[i + j] = out[i + j] + a * b
        return HodgeSeries(tuple(out))

    def inverse(self) -> "HodgeSeries":
        a = self.coefficients
        if a[0] != HodgePolynomial.one():
            raise NonInvertibleSeries(
                "series inverse requires constant coefficient 1"
            )
        out = [HodgePolynomial.zero() for _ in range(self.order + 1)]
        out[0] = HodgePolynomial.one()
        for n in range(1, self.order + 1):
            acc = HodgePolynomial.zero()
            for k in range(1, n + 1):
                acc = acc + a[k] * out[n - k]
            out[n] = acc.scale(-1)
        return HodgeSeries(tuple(out))

    def __pow__(self, k: int) -> "HodgeSeries":
        if not isinstance(k, int):
            raise InputError(f"series exponent must be an integer, got {k!r}")
        if k < 0:
            return self.inverse() ** (-k)
        result = HodgeSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute_neg(self) -> "HodgeSeries":
        return HodgeSeries(tuple(c.substitute_neg() for c in self.coefficients))

    def evaluate_xy(self, x, y) -> TruncatedSeries:
        """Collapse to a plain q-series by evaluating every coefficient."""
        return TruncatedSeries(tuple(c.evaluate(x, y) for c in self.coefficients))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coefficients]


# ---------------------------------------------------------------------------
# sector data


@dataclass(frozen=True)
class BigradedDims:
    """A finite map (s,t) -> nonnegative dimension."""

    entries: tuple  # sorted ((s, t), positive int)

    def __post_init__(self):
        acc: dict = {}
        for (s, t), dim in self.entries:
            if not isinstance(s, int) or not isinstance(t, int) or s < 0 or t < 0:
                raise InputError(f"bidegree ({s},{t}) must be nonnegative integers")
            if not isinstance(dim, int) or dim < 0:
                raise InputError(f"dimension at ({s},{t}) must be a nonnegative int")
            if dim:
                acc[(s, t)] = acc.get((s, t), 0) + dim
        object.__setattr__(self, "entries", tuple(sorted(acc.items())))

    @classmethod
    def from_dict(cls, mapping) -> "BigradedDims":
        return cls(tuple(mapping.items()))

    def max_degree(self) -> int:
        return max((max(s, t) for (s, t), _ in self.entries), default=0)

    def polynomial(self) -> HodgePolynomial:
        return HodgePolynomial(self.entries)

    def total(self) -> int:
        return sum(dim for _, dim in self.entries)


def shift_number(angles) -> Fraction:
    """Sum of rotation angles; every angle must lie in (0, 1]."""
    total = Fraction(0)
    for theta in angles:
        theta = Fraction(theta)
        if not 0 < theta <= 1:
            raise AngleOutOfRange(f"angle {theta} outside (0, 1]")
        total += theta
    return total


@dataclass(frozen=True)
class SectorHodgeDatum:
    """One (conjugacy class, fixed-set component) with its Hodge data.

    ``d`` is the complex dimension of the component, which bounds the
    bidegree support; the angles are those of the class representative on
    the normal directions, so the trivial sector has an empty list.
    """

    class_label: str
    component: int
    dims: BigradedDims
    angles: tuple
    d: int

    def __post_init__(self):
        object.__setattr__(
            self, "angles", tuple(Fraction(a) for a in self.angles)
        )
        shift_number(self.angles)  # validates the range
        if not isinstance(self.d, int) or self.d < 0:
            raise InputError(f"component dimension must be >= 0, got {self.d}")
        if self.dims.max_degree() > self.d:
            raise InputError(
                f"dims support exceeds component dimension {self.d}"
            )

    @property
    def shift(self) -> Fraction:
        return shift_number(self.angles)

    def integer_shift(self) -> int:
        value = self.shift
        if value.denominator != 1:
            raise NonIntegerShift(
                f"sector ({self.class_label}, {self.component}) has "
                f"non-integer shift {value}"
            )
        return int(value)


def sector_data_from_json(items) -> tuple:
    """Parse [{"class", "component", "dims": {"s,t": dim}, "angles", "d"}]."""
    data = []
    for item in items:
        try:
            dims = {}
            for key, dim in dict(item["dims"]).items():
                s, t = (int(p) for p in str(key).split(","))
                dims[(s, t)] = int(dim)
            datum = SectorHodgeDatum(
                class_label=str(item["class"]),
                component=int(item["component"]),
                dims=BigradedDims.from_dict(dims),
                angles=tuple(Fraction(a) for a in item.get("angles", [])),
                d=int(item["d"]),
            )
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad sector datum {item!r}: {exc}") from exc
        data.append(datum)
    return tuple(data)


# ---------------------------------------------------------------------------
# shifts


def wreath_cycle_shift(shift, d: int, r: int) -> Fraction:
    """The shift of an r-cycle sector over a component with shift F:
    F + d(r-1)/2, from the eigenvalues of the cyclic block matrix."""
    if not isinstance(r, int) or r < 1:
        raise InputError(f"cycle length must be a positive int, got {r}")
    if not isinstance(d, int) or d < 0:
        raise InputError(f"complex dimension must be >= 0, got {d}")
    return Fraction(shift) + Fraction(d * (r - 1), 2)


def wreath_type_shift(rho, data, d: int, require_integer: bool = True):
    """Total shift of the sector indexed by the assignment rho.

    rho maps (datum index, cycle length r) -> multiplicity; the shift is the
    multiplicity-weighted sum of per-cycle shifts, additive across disjoint
    assignments.  With ``require_integer`` (the default, matching the
    integer-shift restriction) a fractional total raises NonIntegerShift.
    """
    total = Fraction(0)
    for (idx, r), mult in dict(rho).items():
        if not isinstance(mult, int) or mult < 0:
            raise InputError(f"multiplicity {mult!r} must be a nonnegative int")
        if not 0 <= idx < len(data):
            raise InputError(f"datum index {idx} out of range")
        if mult:
            total += mult * wreath_cycle_shift(data[idx].shift, d, r)
    if require_integer and total.denominator != 1:
        raise NonIntegerShift(f"type shift {total} is not an integer")
    return total


def h_cr_polynomial(data) -> HodgePolynomial:
    """The shifted polynomial: each sector's dims moved up by (xy)^shift.

    All dimensions enter unsigned; signs belong to the product formula, not
    to the polynomial.
    """
    out = HodgePolynomial.zero()
    for datum in data:
        out = out + datum.dims.polynomial().shift_by(datum.integer_shift())
    return out


# ---------------------------------------------------------------------------
# symmetric powers


def sp_generating(dims: BigradedDims, order: int) -> HodgeSeries:
    """Generating series of graded symmetric-power dimensions.

    Coefficient m is the bigraded dimension polynomial of the m-th symmetric
    power, where even-total-degree classes contribute symmetric powers and
    odd ones exterior powers: the product of (1 - x^s y^t q)^(-dim) over
    even (s,t) and (1 + x^s y^t q)^(dim) over odd.  All coefficients are
    nonnegative.
    """
    out = HodgeSeries.one(order)
    for (s, t), dim in dims.entries:
        mono = HodgePolynomial.monomial(s, t)
        sign = 1 if (s + t) % 2 else -1
        coeffs = [HodgePolynomial.one()] + [HodgePolynomial.zero()] * order
        if order >= 1:
            coeffs[1] = mono.scale(sign)
        factor = HodgeSeries(tuple(coeffs))
        out = out * factor ** (sign * dim)
    return out


# ---------------------------------------------------------------------------
# the product formula, both sides


def _check_xy_exponent(d: int, n: int) -> int:
    """(n-1)d/2 as an integer, else NonIntegerExponentOfXY."""
    num = (n - 1) * d
    if num % 2:
        raise NonIntegerExponentOfXY(
            f"(n-1)d/2 = {num}/2 is fractional at n={n}, d={d}"
        )
    return num // 2


def _validate_inputs(data, d: int, order: int) -> None:
    if not isinstance(d, int) or d < 0:
        raise InputError(f"complex dimension must be >= 0, got {d}")
    if order < 0:
        raise InputError("truncation order must be >= 0")
    for datum in data:
        datum.integer_shift()
    for n in range(1, order + 1):
        _check_xy_exponent(d, n)


def hodge_product_rhs(data, d: int, order: int) -> HodgeSeries:
    """The product side: over cycle lengths n and shifted bidegrees (s,t),
    the factor (1 - x^s y^t q^n (xy)^((n-1)d/2)) to the power
    -(-1)^(s+t) h^{s,t}, with h the unsigned shifted polynomial of the
    sector data."""
    _validate_inputs(data, d, order)
    h = h_cr_polynomial(data)
    out = HodgeSeries.one(order)
    for n in range(1, order + 1):
        e = _check_xy_exponent(d, n)
        for (s, t), coeff in h.terms:
            if coeff.denominator != 1:
                raise InputError(f"dimension {coeff} at ({s},{t}) not an integer")
            exponent = -int(coeff) if (s + t) % 2 == 0 else int(coeff)
            coeffs = [HodgePolynomial.one()] + [
                HodgePolynomial.zero()
            ] * order
            coeffs[n] = HodgePolynomial.monomial(s + e, t + e, -1)
            out = out * HodgeSeries(tuple(coeffs)) ** exponent
    return out


def _assignments(num_data: int, order: int, n: int):
    """All maps (datum index, cycle length) -> multiplicity with total n."""
    keys = [(idx, r) for idx in range(num_data) for r in range(1, n + 1)]

    def rec(i: int, remaining: int, acc: tuple):
        if remaining == 0:
            yield acc
            return
        if i == len(keys):
            return
        (idx, r) = keys[i]
        yield from rec(i + 1, remaining, acc)
        for mult in range(1, remaining // r + 1):
            yield from rec(
                i + 1, remaining - r * mult, acc + (((idx, r), mult),)
            )

    yield from rec(0, n, ())


def hodge_product_lhs(data, d: int, order: int) -> HodgeSeries:
    """The computed side: coefficient n enumerates the sector types of the
    n-th wreath symmetric product.  Each type contributes the product of
    symmetric-power dimension polynomials of its entries, moved up by
    (xy)^(type shift); the whole coefficient is then taken at (-x,-y)."""
    _validate_inputs(data, d, order)
    sp_tables = [sp_generating(datum.dims, order) for datum in data]
    coefficients = [HodgePolynomial.one()]
    for n in range(1, order + 1):
        acc = HodgePolynomial.zero()
        for rho in _assignments(len(data), order, n):
            shift = wreath_type_shift(dict(rho), data, d)
            term = HodgePolynomial.one()
            for (idx, r), mult in rho:
                term = term * sp_tables[idx].coefficients[mult]
            acc = acc + term.shift_by(int(shift))
        coefficients.append(acc.substitute_neg())
    return HodgeSeries(tuple(coefficients))


def hodge_product_check(data, d: int, order: int) -> dict:
    """Both sides of the product formula, as a JSON-ready report."""
    lhs = hodge_product_lhs(data, d, order)
    rhs = hodge_product_rhs(data, d, order)
    mismatch = None
    for i in range(order + 1):
        if lhs.coefficients[i] != rhs.coefficients[i]:
            mismatch = i
            break
    report = {
        "identity": "hodge-product-formula",
        "d": d,
        "order": order,
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "equal": mismatch is None,
    }
    if mismatch is not None:
        report["mismatch_index"] = mismatch
    return report
