"""
The verification suites and the grid runner.

A suite names one family of statements about Hankel determinantal rings, with its anchor, the
statement it checks and how. `Suite.tasks` expands a `SuiteConfig` into independent parameter
points; `run_suites` executes every point, serially or in a process pool, and returns the
reports in a deterministic order.
"""
import logging
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime

from hankelring.algebra.coefficients import PrimeField
from hankelring.charp.fedder import FEDDER_ANCHOR, fedder_check
from hankelring.charp.thresholds import (
    FPT_DETERMINANTAL_ANCHOR,
    FPT_MAXIMAL_ANCHOR,
    HEIGHT_CHAIN_ANCHOR,
    fpt_determinantal_check,
    fpt_maximal_check,
    height_chain_check,
)
from hankelring.divisors.symbolic import (
    CLASS_GROUP_ANCHOR,
    Q_POWER_ANCHOR,
    SYMBOLIC_ANCHOR,
    VALUATION_ANCHOR,
    class_group_check,
    q_power_class_check,
    symbolic_power_verify,
    valuation_check,
)
from hankelring.exceptions import BudgetExhaustedError, PreconditionError
from hankelring.groebner.settings import DEFAULT_STEP_BUDGET, EngineSettings, use_engine_settings
from hankelring.hankel.identities import (
    CANONICALIZATION_ANCHOR,
    INVARIANTS_ANCHOR,
    LENGTH_LEMMA_ANCHOR,
    MINOR_IDENTITY_ANCHOR,
    MINOR_PRODUCT_ANCHOR,
    SPECIALIZATION_ANCHOR,
    SYMBOLIC_LEMMA_ANCHOR,
    VAL2_ANCHOR,
    WATANABE_ANCHOR,
    admissible_val2_indices,
    canonicalization_check,
    generic_specialization_check,
    invariants_check,
    lemma_symbolic_check,
    length_lemma_check,
    minor_identity_check,
    minor_product_identity_check,
    val2_identity_check,
    watanabe_check,
)
from hankelring.hankel.model import GeneralHankelContext, HankelContext
from hankelring.hankel.secant import (
    NOT_PURE_ANCHOR,
    PARAMETRIZATION_ANCHOR,
    SOCLE_INDEPENDENCE_ANCHOR,
    not_pure_ingredient_check,
    parametrization_check,
    socle_independence_check,
)
from hankelring.utils.configuration import ConfigurationError
from hankelring.verifier.reports import Status, VerificationReport

logger = logging.getLogger(__name__)

ALL = "all"
MINOR_IDENTITY_SAMPLES = 100
GENERIC_SHAPE_BOUND = (3, 4)
LEMMA_SYMBOLIC_SHAPES = ((3, 3, 2), (3, 4, 2), (4, 4, 3))

Range = Tuple[int, int]
Reports = Union[VerificationReport, List[VerificationReport]]


class UnknownSuiteError(Exception):
    def __init__(self, message):
        super().__init__(message)


@dataclass(frozen=True)
class SuiteConfig:
    """
    One verification run: the parameter grid, the suites and the engine knobs.

    Ranges are inclusive pairs (first, last). `k = None` selects every valid k.

    Raises
    ------
    ConfigurationError
        On empty or non-positive ranges, non-prime entries in `primes`, a non-positive budget,
        e_max or worker count.
    """

    t: Range = (2, 4)
    n: Range = (2, 4)
    k: Optional[Range] = None
    primes: Tuple[int, ...] = (2, 3, 5)
    e_max: int = 2
    suites: Tuple[str, ...] = (ALL,)
    step_budget: int = DEFAULT_STEP_BUDGET
    seed: int = 0
    samples: int = 20
    cache_dir: Optional[str] = None
    workers: int = 1
    timings: bool = False

    def __post_init__(self) -> None:
        for name in ("t", "n", "k"):
            bounds = getattr(self, name)
            if bounds is None:
                continue
            first, last = bounds
            if not 1 <= first <= last:
                raise ConfigurationError(
                    f"The {name} range {first}:{last} is empty or not positive."
                )
        if self.t[0] > self.n[1]:
            raise ConfigurationError(
                f"No t <= n: t starts at {self.t[0]} and n stops at {self.n[1]}."
            )
        bad = [p for p in self.primes if not isprime(p)]
        if bad:
            raise ConfigurationError(f"Not prime: {bad}.")
        for name in ("e_max", "step_budget", "workers", "samples"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}.")

    @classmethod
    def from_settings(cls, settings: Dict[str, Any]) -> "SuiteConfig":
        """Build from resolved settings, as produced by `ConfigurationManager.resolve`."""
        values = dict(settings)
        for name in ("t", "n", "k"):
            if values.get(name) is not None:
                values[name] = tuple(values[name])
        values["primes"] = tuple(sorted(set(values.get("primes", cls.primes))))
        values["suites"] = tuple(values.get("suites", cls.suites))
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def engine(self) -> EngineSettings:
        return EngineSettings(step_budget=self.step_budget, cache_dir=self.cache_dir)

    def pairs(self) -> List[Tuple[int, int]]:
        """(t, n) with t <= n inside both ranges."""
        return [
            (t, n)
            for t in range(self.t[0], self.t[1] + 1)
            for n in range(max(t, self.n[0]), self.n[1] + 1)
        ]

    def k_values(self, t: int, n: int) -> List[int]:
        top = n - t + 2
        first, last = self.k if self.k is not None else (1, top)
        return list(range(max(first, 1), min(last, top) + 1))

    def selected(self) -> List["Suite"]:
        """
        Raises
        ------
        UnknownSuiteError
            If a selected name is not a suite.
        """
        if ALL in self.suites:
            return list(SUITES.values())
        return [get_suite(name) for name in self.suites]


@dataclass(frozen=True)
class Suite:
    name: str
    # the cited result; every anchor starts with "<label>: "
    label: str
    anchor: str
    statement: str
    method: str
    run: Callable[..., Reports] = field(repr=False)
    tasks: Callable[[SuiteConfig], Iterable[Dict[str, Any]]] = field(repr=False)

    def explain(self) -> str:
        return "\n".join(
            [
                f"{self.name} ({self.label})",
                f"  anchor:    {self.anchor}",
                f"  statement: {self.statement}",
                f"  method:    {self.method}",
            ]
        )


@lru_cache(maxsize=128)
def _context(t: int, n: int, p: int = 0) -> HankelContext:
    """Contexts are shared by the tasks of one process, so memoized bases are reused."""
    return HankelContext(t, n, PrimeField(p) if p else None)


def _pairs(config: SuiteConfig, min_t: int = 1) -> Iterable[Dict[str, Any]]:
    return ({"t": t, "n": n} for t, n in config.pairs() if t >= min_t)


def _pairs_by_prime(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    return ({"t": t, "n": n, "p": p} for t, n in config.pairs() for p in config.primes)


def _generic_shapes(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    rows, columns = GENERIC_SHAPE_BOUND
    for t in range(max(config.t[0], 2), min(config.t[1], rows) + 1):
        for m in range(t, rows + 1):
            for s in range(m, columns + 1):
                yield {"m": m, "s": s, "t": t}


def _canonicalization_tasks(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    for u in range(config.t[0], config.t[1] + 1):
        for r in range(max(u, config.n[0]), config.n[1] + 1):
            for s in range(r, config.n[1] + 1):
                yield {"r": r, "s": s, "u": u}


def _length_lemma_tasks(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    for t in range(max(config.t[0], 2), config.t[1] + 1):
        for s in range(1, config.n[1] + 1):
            for r in range(1, s + 1):
                yield {"t": t, "r": r, "s": s}


def _symbolic_tasks(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    for t, n in config.pairs():
        if t >= 2:
            for k in config.k_values(t, n):
                yield {"t": t, "n": n, "k": k}


def _not_pure_tasks(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    for t in range(max(config.t[0], 3), config.t[1] + 1):
        for n in range(t - 1, config.n[1] + 1):
            yield {"t": t, "n": n}


def _lemma_symbolic_tasks(config: SuiteConfig) -> Iterable[Dict[str, Any]]:
    for r, s, u in LEMMA_SYMBOLIC_SHAPES:
        yield {"r": r, "s": s, "u": u, "samples": config.samples, "seed": config.seed}


def _val2(t: int, n: int) -> List[VerificationReport]:
    ctx = _context(t, n)
    return [val2_identity_check(ctx, indices) for indices in admissible_val2_indices(ctx)]


SUITES: Dict[str, Suite] = {}


def register(suite: Suite) -> Suite:
    SUITES[suite.name] = suite
    return suite


register(
    Suite(
        "invariants",
        "§1",
        INVARIANTS_ANCHOR,
        "dim R = 2t-2, height I_t(H) = n-t+1, e(R) = C(n, t-1), a(R) = 1-t and R is Gorenstein "
        "exactly when t = n.",
        "Hilbert series of the degrevlex initial ideal of I and of I + hsop; the socle of R/hsop "
        "degree by degree.",
        run=lambda t, n: invariants_check(_context(t, n)),
        tasks=_pairs,
    )
)
register(
    Suite(
        "canonicalization",
        "§1",
        CANONICALIZATION_ANCHOR,
        "I_u of the r x s Hankel matrix equals I_u of the u x (r+s-u) Hankel matrix.",
        "Equality of reduced degrevlex Gröbner bases.",
        run=canonicalization_check,
        tasks=_canonicalization_tasks,
    )
)
register(
    Suite(
        "parametrization",
        "Eq. (secant)",
        PARAMETRIZATION_ANCHOR,
        "R is the coordinate ring of the secant variety: the kernel of x_{i+1} -> h_i is I_t(H).",
        "Elimination of u and v from the graph ideal, compared with I by reduced bases; the "
        "Hankel matrix in the h_i is checked for vanishing t-minors and sampled at random points.",
        run=lambda t, n, seed, samples: parametrization_check(t, n, seed=seed, samples=samples),
        tasks=lambda config: (
            dict(task, seed=config.seed, samples=config.samples) for task in _pairs(config, 2)
        ),
    )
)
register(
    Suite(
        "specialization",
        "§1",
        SPECIALIZATION_ANCHOR,
        "Y_{ij} -> x_{i+j-1} maps maximal minors to maximal minors and the (t-1)(n-1) differences "
        "cut the generic determinantal ring down to R.",
        "Minor images compared term by term; dimensions from Hilbert series.",
        run=generic_specialization_check,
        tasks=_pairs,
    )
)
register(
    Suite(
        "minor-identity",
        "Lemma identity (1)",
        MINOR_IDENTITY_ANCHOR,
        "[a|b][c|d] = [a|d][c|b] for (t-1)-minors of a generic matrix of rank < t.",
        "Normal forms modulo I_t(Y) for every index choice, and a numeric oracle on seeded "
        "random rank t-1 matrices over GF(101).",
        run=lambda m, s, t, seed: minor_identity_check(
            m, s, t, seed=seed, samples=MINOR_IDENTITY_SAMPLES
        ),
        tasks=lambda config: (dict(task, seed=config.seed) for task in _generic_shapes(config)),
    )
)
register(
    Suite(
        "minor-product",
        "Lemma identity (2)",
        MINOR_PRODUCT_ANCHOR,
        "Products of (t-1)-minor ideals of adjacent leading submatrices agree modulo I_t(Y).",
        "Ideal equality of the two products plus I_t(Y), by reduced bases.",
        run=minor_product_identity_check,
        tasks=_generic_shapes,
    )
)
register(
    Suite(
        "valuation",
        "Lemma valuation",
        VALUATION_ANCHOR,
        "The valuation along p of [1..t-1 | i_1..i_{t-1}] is n+1-i_{t-1}; the exchange identity "
        "behind it holds in R; valuations add.",
        "Membership in the chain p<1> > p<2> > ... for the generating minors and their pairwise "
        "products.",
        run=lambda t, n: valuation_check(_context(t, n)),
        tasks=lambda config: _pairs(config, 2),
    )
)
register(
    Suite(
        "val2",
        "Eq. (val2)",
        VAL2_ANCHOR,
        "[1..t-1 | i][2..t | n-t+2..n] = [1..t-1 | n-t+2..n][2..t | i] in R for every admissible i.",
        "Normal form of the difference modulo I.",
        run=_val2,
        tasks=lambda config: _pairs(config, 2),
    )
)
register(
    Suite(
        "symbolic",
        "Thm class-group",
        SYMBOLIC_ANCHOR,
        "p<k> is the k-th symbolic power of p, so hull(p^k) = p<k> and Cl(R) is cyclic of order "
        "n-t+2.",
        "Five-part certificate: p^k in p<k>; radical p; the unmixed multiplicity k C(n, t-2) "
        "with the degrevlex initial-ideal bound; (p<k> : w) = p<k> for w outside p; "
        "hull(p^k) = p<k>.",
        run=lambda t, n, k: symbolic_power_verify(_context(t, n), k),
        tasks=_symbolic_tasks,
    )
)
register(
    Suite(
        "length-lemma",
        "Lemma cm",
        LENGTH_LEMMA_ANCHOR,
        "The length of F[y1..ys] / ((y1..yr)^{t-1} + (y2..ys)^t) is (s-r+1) C(s+t-2, t-2).",
        "Brute-force standard monomial counts against the Hilbert series engine; the colon "
        "identity by ideal equality.",
        run=length_lemma_check,
        tasks=_length_lemma_tasks,
    )
)
register(
    Suite(
        "classgroup",
        "Thm class-group",
        CLASS_GROUP_ANCHOR,
        "[p] generates Cl(R), of order n-t+2; the canonical module p<2> needs C(n-1, t-1) "
        "generators of degree t-1.",
        "Reflexive hulls (a : (a : J)) of the powers of p and their minimal generator counts.",
        run=lambda t, n: class_group_check(_context(t, n)),
        tasks=lambda config: _pairs(config, 2),
    )
)
register(
    Suite(
        "q-power",
        "Remark mcm",
        Q_POWER_ANCHOR,
        "The class of q^i is the class of p^(n-t+2-i) for q = p<n-t+1>.",
        "hull(q^i p^i) is principal for every 1 <= i <= n-t+1.",
        run=lambda t, n: q_power_class_check(_context(t, n)),
        tasks=lambda config: _pairs(config, 2),
    )
)
register(
    Suite(
        "watanabe",
        "Lemma watanabe",
        WATANABE_ANCHOR,
        "Delta R has radical p, with n-t+1 reductions x_{t+a-1} Delta in F[x1..x_{t+a-2}] + I; "
        "x1..x_{2t-2} are algebraically independent modulo I; p<k>^2 lies in p<k+1>.",
        "Radical membership, elimination and ideal containment.",
        run=lambda t, n: watanabe_check(_context(t, n)),
        tasks=lambda config: _pairs(config, 2),
    )
)
register(
    Suite(
        "lemma-symbolic",
        "Lemma symbolic",
        SYMBOLIC_LEMMA_ANCHOR,
        "delta_1...delta_m lies in I_u^d whenever m <= d and the minor sizes add up to u d.",
        "Seeded random admissible products checked by membership in the precomputed powers.",
        run=lambda r, s, u, samples, seed: lemma_symbolic_check(
            GeneralHankelContext(r, s, u), samples=samples, seed=seed
        ),
        tasks=_lemma_symbolic_tasks,
    )
)
register(
    Suite(
        "fpure",
        "Thm fpure",
        FEDDER_ANCHOR,
        "R is F-pure in every characteristic p.",
        "Fedder's criterion on the reduced basis of (I^[p] : I), tested term-wise against m^[p], "
        "and the witness f^{p-1} with f^{p-1} I in I^[p].",
        run=lambda t, n, p: fedder_check(_context(t, n, p)),
        tasks=_pairs_by_prime,
    )
)
register(
    Suite(
        "fpt-maximal",
        "Thm fpt1",
        FPT_MAXIMAL_ANCHOR,
        "fpt(m_R) = 2(t-1)/(n-t+2).",
        "nu_e(m_R) by ascending r until (I^[q] : I) m^r lies in m^[q], compared exactly with "
        "(t-1) floor(2(q-1)/(n-t+2)) for e = 1..e_max.",
        run=lambda t, n, p, e_max: fpt_maximal_check(_context(t, n, p), e_max),
        tasks=lambda config: (dict(task, e_max=config.e_max) for task in _pairs_by_prime(config)),
    )
)
register(
    Suite(
        "fpt-determinantal",
        "Thm fpt2",
        FPT_DETERMINANTAL_ANCHOR,
        "fpt(I_t(H)) = min{(n+t-2i+1)/(t-i+1) : 1 <= i <= t}.",
        "nu_e(I_t) from powers of I_t spanned modulo m^[q]; nu_e/q must not decrease and must "
        "stay within (n+t-1)/q of the closed form.",
        run=lambda t, n, p, e_max: fpt_determinantal_check(_context(t, n, p), e_max),
        tasks=lambda config: (dict(task, e_max=config.e_max) for task in _pairs_by_prime(config)),
    )
)
register(
    Suite(
        "heights",
        "Thm fpt2",
        HEIGHT_CHAIN_ANCHOR,
        "height I_i(H) = n+t-2i+1 for 1 <= i <= t.",
        "Dimension engine on each I_i(H); ordinary powers of I_i(H) containing the Fedder witness.",
        run=lambda t, n: height_chain_check(_context(t, n)),
        tasks=_pairs,
    )
)
register(
    Suite(
        "socle-independence",
        "Thm ratsing",
        SOCLE_INDEPENDENCE_ANCHOR,
        "For p >= t the products h_{i_1}...h_{i_{t-1}} are independent modulo (u_j^n, v_j^n), the "
        "linear-algebra core of F-rationality.",
        "Coefficient extraction at the target monomials and a rank computation over GF(p).",
        run=socle_independence_check,
        tasks=_pairs_by_prime,
    )
)
register(
    Suite(
        "not-pure",
        "Prop. not-pure",
        NOT_PURE_ANCHOR,
        "Every h_i lies in (u_j - v_j, sum_j v_j^{n+t-2}), a height t ideal whose quotient has "
        "dimension t-2.",
        "Ideal membership and the dimension engine in F[u, v].",
        run=not_pure_ingredient_check,
        tasks=_not_pure_tasks,
    )
)


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuiteError(f"Unknown suite '{name}'; known suites are {sorted(SUITES)}.")


def explain(name: str = None) -> str:
    """
    The anchor, statement and method of a suite, or the list of all suites when no name is given.

    Raises
    ------
    UnknownSuiteError
        If `name` is not a suite.
    """
    if name is None:
        return "\n".join(f"{s.name:<20} {s.statement}" for s in SUITES.values())
    return get_suite(name).explain()


@dataclass(frozen=True)
class Task:
    suite: str
    parameters: Tuple[Tuple[str, Any], ...]

    def describe(self) -> str:
        return ", ".join(f"{k}={v}" for k, v in self.parameters)


def tasks_for(config: SuiteConfig) -> List[Task]:
    return [
        Task(suite.name, tuple(point.items()))
        for suite in config.selected()
        for point in suite.tasks(config)
    ]


def _execute(job: Tuple[Task, EngineSettings]) -> List[VerificationReport]:
    task, settings = job
    suite = get_suite(task.suite)
    parameters = dict(task.parameters)
    start = time.perf_counter()
    with use_engine_settings(settings):
        try:
            outcome = suite.run(**parameters)
        except BudgetExhaustedError as e:
            logger.warning(f"{task.suite} ({task.describe()}): {e}")
            outcome = VerificationReport.budget_exhausted(
                task.suite, parameters, suite.anchor, e.budget
            )
        except PreconditionError as e:
            outcome = VerificationReport.not_applicable(
                task.suite, parameters, suite.anchor, str(e)
            )
    elapsed = time.perf_counter() - start
    reports = outcome if isinstance(outcome, list) else [outcome]
    finished = []
    for report in reports:
        report = report.with_suite(task.suite)
        report.timing = elapsed / len(reports)
        finished.append(report)
    return finished


def run_suites(config: SuiteConfig) -> List[VerificationReport]:
    """
    Run every selected suite over the grid of `config`.

    Tasks go to a process pool when `config.workers` > 1; reports come back in task order
    either way.

    Raises
    ------
    UnknownSuiteError
        If a selected suite does not exist.
    """
    tasks = tasks_for(config)
    jobs = [(task, config.engine) for task in tasks]
    for suite in config.selected():
        logger.info(f"Suite {suite.name}: {sum(1 for t in tasks if t.suite == suite.name)} tasks.")
    if config.workers > 1 and len(jobs) > 1:
        with Pool(processes=config.workers) as pool:
            results = pool.map(_execute, jobs, chunksize=1)
    else:
        results = [_execute(job) for job in jobs]
    reports = [report for batch in results for report in batch]
    logger.info(f"Finished {len(tasks)} tasks with {len(reports)} reports.")
    return reports


def failures(reports: Sequence[VerificationReport]) -> List[VerificationReport]:
    return [r for r in reports if r.status == Status.FAIL]
