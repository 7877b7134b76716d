"""
Exact scalars, Z-graded vector spaces, degree shifts and Koszul signs.

Scalars are ``fractions.Fraction``.  Vectors are plain dicts mapping basis
names to nonzero scalars, so the zero vector is ``{}``.  Permutations use
the one-based image convention: ``sigma[i-1] = sigma(i)``.

    >>> koszul_sign((2, 1), (1, 1))
    -1
    >>> wedge_sign((2, 1), (1, 1))
    1
    >>> [tuple(s) for s in shuffles(1, 3)]
    [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations


Scalar = Fraction


def parse_scalar(s):
    """Read "p/q", an int, or a Fraction into a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError("cannot read scalar %r" % (s,))


def format_scalar(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# sparse vectors

def vec_add(u, v, c=1):
    """Return u + c*v as a new dict."""
    w = dict(u)
    for k, x in v.items():
        y = w.get(k, 0) + c * x
        if y:
            w[k] = y
        else:
            w.pop(k, None)
    return w


def vec_iadd(u, v, c=1):
    """In-place u += c*v."""
    for k, x in v.items():
        y = u.get(k, 0) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)
    return u


def vec_scale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


# ---------------------------------------------------------------------------
# graded spaces

@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite basis of (name, degree) pairs; order is significant."""

    basis: tuple = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        basis = tuple((str(n), int(d)) for n, d in self.basis)
        names = [n for n, _ in basis]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def names(self):
        return tuple(n for n, _ in self.basis)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        return self._index[name]

    def degree(self, name):
        return self.basis[self._index[name]][1]

    def degrees(self):
        return sorted(set(d for _, d in self.basis))

    def component(self, degree):
        """Names of the basis elements of the given degree, in basis order."""
        return tuple(n for n, d in self.basis if d == degree)

    def dims(self):
        out = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return out

    def vector_degree(self, v):
        """Degree of a homogeneous vector (None for the zero vector)."""
        degs = set(self.degree(k) for k in v)
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop() if degs else None

    def to_json(self):
        return {"basis": [{"name": n, "degree": d} for n, d in self.basis]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(tuple((b["name"], b["degree"]) for b in obj["basis"]))
        except (KeyError, TypeError) as e:
            raise ValueError("malformed graded space: %s" % e)


def shift(V, k):
    """V[k]: same names, every degree lowered by k."""
    return GradedVectorSpace(tuple((n, d - k) for n, d in V.basis))


def direct_sum_space(V, W):
    return GradedVectorSpace(V.basis + W.basis)


# ---------------------------------------------------------------------------
# permutations and signs

def _check_perm(sigma):
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, sigma))


def parity(sigma):
    """0 for even, 1 for odd."""
    _check_perm(sigma)
    seen = [False] * len(sigma)
    p = 0
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        p += length - 1
    return p % 2


def compose(sigma, tau):
    """(sigma o tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma):
    out = [0] * len(sigma)
    for i, s in enumerate(sigma):
        out[s - 1] = i + 1
    return tuple(out)


def koszul_sign(sigma, degrees):
    """
    Koszul sign eps(sigma; a_1..a_n) where degrees[i] is the degree of a_{i+1}.

    It is the sign in a_{sigma(1)} . ... . a_{sigma(n)} = eps * a_1 . ... . a_n
    for the graded symmetric product; sorting the word by adjacent swaps
    collects (-1)^{|a||b|} per swap.
    """
    if len(sigma) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    return _koszul(tuple(sigma), tuple(d % 2 for d in degrees))


@lru_cache(maxsize=1 << 16)
def _koszul(sigma, odd):
    _check_perm(sigma)
    word = list(sigma)
    sign = 1
    n = len(word)
    for i in range(n):
        for j in range(n - 1 - i):
            a, b = word[j], word[j + 1]
            if a > b:
                word[j], word[j + 1] = b, a
                if odd[a - 1] and odd[b - 1]:
                    sign = -sign
    return sign


def wedge_sign(sigma, degrees):
    """(-1)^sigma * eps(sigma): the sign for graded antisymmetric products."""
    s = koszul_sign(sigma, degrees)
    return -s if parity(sigma) else s


def sort_sign(keys, degrees):
    """
    Stable sort of a word.  Returns (order, eps) with eps the Koszul sign
    picked up by moving the letters into sorted position, i.e.
    x_1 . ... . x_n = eps * x_{order[0]} . ... . x_{order[n-1]}.
    """
    n = len(keys)
    order = sorted(range(n), key=lambda i: keys[i])
    # position of each letter in the sorted word
    pos = [0] * n
    for p, i in enumerate(order):
        pos[i] = p
    sign = 1
    for i in range(n):
        if not degrees[i] % 2:
            continue
        for j in range(i + 1, n):
            if pos[i] > pos[j] and degrees[j] % 2:
                sign = -sign
    return order, sign


def shuffles(l, n):
    """The (l, n-l) unshuffles, lexicographically ordered image lists."""
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")
    return list(_shuffles(l, n))


@lru_cache(maxsize=256)
def _shuffles(l, n):
    out = []
    full = range(1, n + 1)
    for head in combinations(full, l):
        hs = set(head)
        out.append(tuple(head) + tuple(i for i in full if i not in hs))
    return tuple(out)


def set_partitions(n):
    """
    All partitions of range(n) into nonempty blocks; blocks are increasing
    tuples ordered by their least element.
    """
    if n == 0:
        yield ()
        return
    for part in set_partitions(n - 1):
        # put n-1 into an existing block, or alone
        for i in range(len(part)):
            yield part[:i] + (part[i] + (n - 1,),) + part[i + 1:]
        yield part + ((n - 1,),)


def wedge_sort(keys, degrees):
    """
    Like sort_sign but for graded antisymmetric words: the sign also carries
    the permutation parity.  Returns (order, sign) with sign 0 when the word
    vanishes (a repeated even letter).
    """
    n = len(keys)
    order = sorted(range(n), key=lambda i: keys[i])
    pos = [0] * n
    for p, i in enumerate(order):
        pos[i] = p
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if pos[i] > pos[j]:
                if not (degrees[i] % 2 and degrees[j] % 2):
                    sign = -sign
    for a, b in zip(order, order[1:]):
        if keys[a] == keys[b] and not degrees[a] % 2:
            return order, 0
    return order, sign
