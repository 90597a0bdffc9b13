"""
Exact evaluation of the class S5 walk counts on `K_n x K2`, with `u != v`:

    A_n = |S5(u0, v0)| = sum_{k=1}^{floor((n-2)/2)} p_k
    B_n = |S5(u0, v1)| = sum_{k=0}^{floor((n-3)/2)} q_k

where, writing `(x)_t = x! / (x - t)!` for the falling factorial,

    a_{t,k} = (n-2k-2)_t C(t+k, k)                          0 <= t <= n-2k-2
    b_{t,k} = (n-2k-2)_t C(t+k-1, k-1) (t+k)(t+k+1)         0 <= t <= n-2k-2, k >= 1
    c_{t,k} = (n-2k-3)_t C(t+k, k) (t+k+1)                  0 <= t <= n-2k-3
    p_k = (2k)! C(n-2, 2k) (sum_t a_{t,k}) (sum_t b_{t,k})
    q_k = (2k+1)! C(n-2, 2k+1) (sum_t c_{t,k})^2

Everything is integer or `Fraction` arithmetic except the float ratios of `asymptotic_reference`.
"""
import decimal
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, NamedTuple, Optional, Tuple

from bunkbed_lab.exceptions import OutOfRange

log = logging.getLogger(__name__)

E_DIGITS = 30
SERIES_CUTOFF = Fraction(1, 10**18)

########################################################################################################################
# Combinatorial primitives
########################################################################################################################


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """`C(n, k)`, 0 when `k > n`, with `C(0, 0) = 1`."""
    if n < 0 or k < 0:
        raise ValueError("Binomial coefficients need n, k >= 0, got ({}, {})".format(n, k))
    return math.comb(n, k)


def falling(x: int, t: int) -> int:
    return math.perm(x, t)


@lru_cache(maxsize=None)
def euler_bounds(digits: int = E_DIGITS) -> Tuple[Fraction, Fraction]:
    """
    Rational bounds `lower < e < upper` with `upper - lower < 10^-digits`.

    The lower bound is the partial exponential series `sum_{j<=N} 1/j!`; its tail is below `1 / (N! N)`.
    """
    lower, term, j = Fraction(1), Fraction(1), 0
    while True:
        j += 1
        term /= j
        lower += term
        tail = term / j
        if tail < Fraction(1, 10**digits):
            return lower, lower + tail


def euler_squared_bounds(digits: int = E_DIGITS) -> Tuple[Fraction, Fraction]:
    lower, upper = euler_bounds(digits)
    return lower * lower, upper * upper


########################################################################################################################
# Terms
########################################################################################################################


def _check_n(n: int, smallest: int = 3) -> None:
    if n < smallest:
        raise OutOfRange("The closed forms need n >= {}, got {}".format(smallest, n))


@lru_cache(maxsize=None)
def a_term(n: int, t: int, k: int) -> int:
    x = n - 2 * k - 2
    return falling(x, t) * binomial(t + k, k)


@lru_cache(maxsize=None)
def b_term(n: int, t: int, k: int) -> int:
    x = n - 2 * k - 2
    return falling(x, t) * binomial(t + k - 1, k - 1) * (t + k) * (t + k + 1)


@lru_cache(maxsize=None)
def c_term(n: int, t: int, k: int) -> int:
    x = n - 2 * k - 3
    return falling(x, t) * binomial(t + k, k) * (t + k + 1)


@lru_cache(maxsize=None)
def c_sum(n: int, k: int) -> int:
    return sum(c_term(n, t, k) for t in range(n - 2 * k - 2))


@lru_cache(maxsize=None)
def p_term(n: int, k: int) -> int:
    """`p_k` for `1 <= k <= (n-2)/2`."""
    if not 1 <= k <= (n - 2) // 2:
        raise OutOfRange("p_k needs 1 <= k <= (n-2)/2, got n={}, k={}".format(n, k))
    span = range(n - 2 * k - 1)
    a_sum = sum(a_term(n, t, k) for t in span)
    b_sum = sum(b_term(n, t, k) for t in span)
    return factorial(2 * k) * binomial(n - 2, 2 * k) * a_sum * b_sum


@lru_cache(maxsize=None)
def q_term(n: int, k: int) -> int:
    """`q_k` for `0 <= k <= (n-3)/2`."""
    if not 0 <= k <= (n - 3) // 2:
        raise OutOfRange("q_k needs 0 <= k <= (n-3)/2, got n={}, k={}".format(n, k))
    return factorial(2 * k + 1) * binomial(n - 2, 2 * k + 1) * c_sum(n, k) ** 2


@dataclass(frozen=True)
class ClosedFormTerms:
    """
    Every term entering `A_n` and `B_n`.

    Attributes:
        n: size of the complete graph.
        a, b: `a_{t,k}` and `b_{t,k}` for `1 <= k <= (n-2)/2`, indexed `[k][t]`.
        c: `c_{t,k}` for `0 <= k <= (n-3)/2`, indexed `[k][t]`.
        p, q: `p_k` and `q_k` over the same index ranges.
    """

    n: int
    a: Dict[int, Tuple[int, ...]]
    b: Dict[int, Tuple[int, ...]]
    c: Dict[int, Tuple[int, ...]]
    p: Dict[int, int]
    q: Dict[int, int]

    def to_dict(self) -> Dict[str, object]:
        def table(terms):
            return {str(k): [str(value) for value in row] for k, row in terms.items()}

        return {
            "n": self.n,
            "a": table(self.a),
            "b": table(self.b),
            "c": table(self.c),
            "p": {str(k): str(value) for k, value in self.p.items()},
            "q": {str(k): str(value) for k, value in self.q.items()},
        }


def closed_form_terms(n: int) -> ClosedFormTerms:
    _check_n(n)
    p_range = range(1, (n - 2) // 2 + 1)
    q_range = range(0, (n - 3) // 2 + 1)
    return ClosedFormTerms(
        n=n,
        a={k: tuple(a_term(n, t, k) for t in range(n - 2 * k - 1)) for k in p_range},
        b={k: tuple(b_term(n, t, k) for t in range(n - 2 * k - 1)) for k in p_range},
        c={k: tuple(c_term(n, t, k) for t in range(n - 2 * k - 2)) for k in q_range},
        p={k: p_term(n, k) for k in p_range},
        q={k: q_term(n, k) for k in q_range},
    )


########################################################################################################################
# Closed forms
########################################################################################################################


def closed_form_A(n: int) -> int:
    """
    `A_n = |S5(u0, v0)|` on `K_n x K2`, exactly.

    Raises:
        OutOfRange: if n < 3.
    """
    _check_n(n)
    return sum(p_term(n, k) for k in range(1, (n - 2) // 2 + 1))


def closed_form_B(n: int) -> int:
    """
    `B_n = |S5(u0, v1)|` on `K_n x K2`, exactly.

    Raises:
        OutOfRange: if n < 3.
    """
    _check_n(n)
    return sum(q_term(n, k) for k in range(0, (n - 3) // 2 + 1))


class TermRatios(NamedTuple):
    n: int
    k: int
    q_ratio: Optional[Fraction]
    p_ratio: Optional[Fraction]

    def q_within_bound(self) -> Optional[bool]:
        """`q_{k+1}/q_k <= e^2/(k+1)^2`, decided against the certified lower bound of `e^2`."""
        if self.q_ratio is None:
            return None
        return self.q_ratio <= euler_squared_bounds()[0] / (self.k + 1) ** 2

    def p_within_bound(self) -> Optional[bool]:
        """`p_{k+1}/p_k <= e^2/(k(k+1))`, decided against the certified lower bound of `e^2`."""
        if self.p_ratio is None:
            return None
        return self.p_ratio <= euler_squared_bounds()[0] / (self.k * (self.k + 1))

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "k": self.k,
            "q_ratio": None if self.q_ratio is None else str(self.q_ratio),
            "p_ratio": None if self.p_ratio is None else str(self.p_ratio),
            "q_within_bound": self.q_within_bound(),
            "p_within_bound": self.p_within_bound(),
        }


def term_ratios(n: int, k: int) -> TermRatios:
    """
    Exact ratios `q_{k+1}/q_k` (for `0 <= k <= (n-5)/2`) and `p_{k+1}/p_k` (for `1 <= k <= (n-4)/2`).

    A ratio whose index range excludes `k` is None.

    Raises:
        OutOfRange: if neither ratio is defined at `(n, k)`.
    """
    q_ratio = p_ratio = None
    if 0 <= k and 2 * k <= n - 5:
        q_ratio = Fraction(q_term(n, k + 1), q_term(n, k))
    if 1 <= k and 2 * k <= n - 4:
        p_ratio = Fraction(p_term(n, k + 1), p_term(n, k))
    if q_ratio is None and p_ratio is None:
        raise OutOfRange("No term ratio is defined at n={}, k={}".format(n, k))
    return TermRatios(n, k, q_ratio, p_ratio)


def c_ratio(n: int, t: int, k: int) -> Fraction:
    """`c_{t+1,k} / c_{t,k}` for `0 <= t <= n-2k-4`."""
    if k < 0 or not 0 <= t <= n - 2 * k - 4:
        raise OutOfRange("c_ratio needs 0 <= t <= n-2k-4, got n={}, t={}, k={}".format(n, t, k))
    return Fraction(c_term(n, t + 1, k), c_term(n, t, k))


def c_sum_bound_holds(n: int, k: int) -> bool:
    """`sum_t c_{t,k} <= e c_{n-2k-3,k}`, decided against the certified lower bound of e."""
    if not 0 <= k <= (n - 3) // 2:
        raise OutOfRange("c_{{t,k}} needs 0 <= k <= (n-3)/2, got n={}, k={}".format(n, k))
    return c_sum(n, k) <= euler_bounds()[0] * c_term(n, n - 2 * k - 3, k)


########################################################################################################################
# Asymptotics
########################################################################################################################


class AsymptoticReference(NamedTuple):
    n: int
    A_ref: Fraction
    B_ref: Fraction
    A_ratio: float
    B_ratio: float

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "A_ref": _scientific(self.A_ref),
            "B_ref": _scientific(self.B_ref),
            "A_ratio": self.A_ratio,
            "B_ratio": self.B_ratio,
        }


@lru_cache(maxsize=None)
def series_constants() -> Tuple[Fraction, Fraction]:
    """
    `(sum_m 1/((m!)^2 (m+1)), sum_m 1/(m!)^2)` by partial summation, stopping once the next term is below 1e-18.
    """
    with_weight, plain = Fraction(0), Fraction(0)
    m = 0
    while True:
        term = Fraction(1, factorial(m) ** 2)
        if term < SERIES_CUTOFF:
            return with_weight, plain
        with_weight += term / (m + 1)
        plain += term
        m += 1


def asymptotic_reference(n: int) -> AsymptoticReference:
    """
    Leading-order references `A_ref = e^2 S' (n-3) ((n-2)!)^2` and `B_ref = e^2 S (n-2) ((n-2)!)^2`, where
    `S' = sum_m 1/((m!)^2 (m+1))` and `S = sum_m 1/(m!)^2`, with the exact ratios `A_n/A_ref` and `B_n/B_ref`.
    """
    _check_n(n, smallest=4)
    with_weight, plain = series_constants()
    e_squared = sum(euler_squared_bounds()) / 2
    scale = e_squared * factorial(n - 2) ** 2
    a_ref = scale * with_weight * (n - 3)
    b_ref = scale * plain * (n - 2)
    reference = AsymptoticReference(n, a_ref, b_ref, float(closed_form_A(n) / a_ref), float(closed_form_B(n) / b_ref))
    log.debug("Asymptotic ratios at n=%d: A %.6f, B %.6f", n, reference.A_ratio, reference.B_ratio)
    return reference


def _scientific(value: Fraction, digits: int = 17) -> str:
    with decimal.localcontext() as context:
        context.prec = digits
        return str(decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator))
