import threading
from typing import Dict, Iterable, Sequence, Tuple

from hankelring.algebra.monomials import ExponentVector
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import DEGREVLEX, MonomialOrder, PolynomialRing
from hankelring.exceptions import RingMismatchError
from hankelring.groebner.buchberger import groebner, reduce_polynomial
from hankelring.groebner.cache import GroebnerCache
from hankelring.groebner.settings import engine_settings


class ZeroIdealError(Exception):
    def __init__(self, message):
        super().__init__(message)


def _dedupe(generators: Iterable[Polynomial]) -> Tuple[Polynomial, ...]:
    seen = set()
    unique = []
    for f in generators:
        if not f:
            continue
        monic = f.monic(DEGREVLEX)
        if monic not in seen:
            seen.add(monic)
            unique.append(f)
    return tuple(unique)


class Ideal:
    """
    An ideal of a polynomial ring given by finitely many generators.

    Reduced Gröbner bases are computed lazily, one per monomial order, and cached on the instance
    behind a lock so concurrent readers see a single computation. When the engine settings name a
    cache directory, bases are also read from and written to the disk cache.

    Two ideals compare equal when their reduced degrevlex bases agree.

    Parameters
    ----------
    ring : PolynomialRing
        Ambient ring.
    generators : Sequence[Polynomial]
        Generators; zero polynomials and repeated scalar multiples are dropped.

    Raises
    ------
    RingMismatchError
        If a generator lives in another ring.
    """

    def __init__(self, ring: PolynomialRing, generators: Sequence[Polynomial] = ()) -> None:
        for f in generators:
            if f.ring != ring:
                raise RingMismatchError(f"Generator {f} belongs to {f.ring}, not to {ring}.")
        self.ring = ring
        self.generators = _dedupe(generators)
        self._bases: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_texts(cls, ring: PolynomialRing, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [Polynomial.parse(text, ring) for text in texts])

    @classmethod
    def of_variables(cls, ring: PolynomialRing, indices: Sequence[int] = None) -> "Ideal":
        """The ideal generated by the variables at the given 0-based positions (all by default)."""
        indices = range(ring.nvars) if indices is None else indices
        return cls(ring, [ring.gen(i) for i in indices])

    # ------------------------------------------------------------------ bases

    def groebner_basis(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Polynomial, ...]:
        with self._lock:
            if order in self._bases:
                return self._bases[order]
        basis = None
        settings = engine_settings()
        disk = GroebnerCache(settings.cache_dir) if settings.cache_dir else None
        if disk is not None:
            basis = disk.load(self.ring, order, self.generators)
        if basis is None:
            basis = groebner(self.generators, order, ring=self.ring)
            if disk is not None:
                disk.store(self.ring, order, self.generators, basis)
        with self._lock:
            self._bases.setdefault(order, basis)
            return self._bases[order]

    def seed_basis(self, order: MonomialOrder, basis: Sequence[Polynomial]) -> None:
        """Record a basis known to be the reduced Gröbner basis of this ideal for `order`."""
        with self._lock:
            self._bases[order] = tuple(basis)

    def cached_bases(self) -> Dict[MonomialOrder, Tuple[Polynomial, ...]]:
        """A snapshot of the reduced bases computed or seeded so far, by order."""
        with self._lock:
            return dict(self._bases)

    def initial_monomials(self, order: MonomialOrder = DEGREVLEX) -> Tuple[ExponentVector, ...]:
        """Minimal generators of the initial ideal for `order`."""
        return tuple(g.leading_monomial(order) for g in self.groebner_basis(order))

    # ------------------------------------------------------------------ membership

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} belongs to {f.ring}, not to {self.ring}.")
        return reduce_polynomial(f, self.groebner_basis(order), order)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        """True if `other` is a subset of this ideal."""
        self._check(other)
        return all(self.contains(f) for f in other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner_basis())

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.generators)

    def _check(self, other: "Ideal") -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"Ideals of {self.ring} and {other.ring} cannot be combined.")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    __hash__ = None  # type: ignore

    # ------------------------------------------------------------------ arithmetic

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.ring, self.generators + (other,))
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [f * other for f in self.generators])
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            raise ValueError(f"Ideal powers need a nonnegative exponent, got {k}.")
        result = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self) -> str:
        return f"Ideal({', '.join(f.to_text() for f in self.generators)})"


class QuotientRing:
    """
    The ring R = A / I, with every ideal of R represented by its preimage in A.

    Parameters
    ----------
    ambient : PolynomialRing
        The polynomial ring A.
    defining_ideal : Ideal
        The ideal I.
    """

    def __init__(self, ambient: PolynomialRing, defining_ideal: Ideal) -> None:
        if defining_ideal.ring != ambient:
            raise RingMismatchError("The defining ideal must live in the ambient ring.")
        self.ambient = ambient
        self.defining_ideal = defining_ideal

    def ideal(self, generators: Sequence[Polynomial]) -> Ideal:
        """Preimage in A of the ideal of R generated by the images of `generators`."""
        return Ideal(self.ambient, tuple(generators) + self.defining_ideal.generators)

    def lift(self, ideal: Ideal) -> Ideal:
        return self.ideal(ideal.generators)

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        return self.defining_ideal.normal_form(f, order)

    def is_zero(self, f: Polynomial) -> bool:
        return self.defining_ideal.contains(f)

    def residue_generators(self, ideal: Ideal) -> Tuple[Polynomial, ...]:
        """Generators of the preimage `ideal` that are nonzero in R."""
        return tuple(f for f in ideal.generators if not self.is_zero(f))

    def __repr__(self) -> str:
        return f"QuotientRing({self.ambient} / {self.defining_ideal})"
