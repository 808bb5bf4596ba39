"""Benchmark harness: Zipf-length sentence sets, init and filter timings.

Sentence lengths follow f(L) = 1.1 * L * 0.90^L truncated to [1, 60] and
renormalized; words are drawn uniformly from a bundled word list with
blacklist terms injected at a configurable rate so filtering has hits.
"""

from __future__ import annotations

import argparse
import gc
import csv
import random
import statistics
import time
from dataclasses import dataclass
from importlib import resources
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .match_engine import MatchStrategy, Term, coerce_terms, compile_matcher

LENGTH_COEF = 1.1
LENGTH_BASE = 0.90
MIN_LENGTH = 1
MAX_LENGTH = 60
DEFAULT_INJECT_RATE = 0.015

INIT_SIZE_FLOOR = 1_000
INIT_SIZE_CEIL = 200_000


class EmptyWordSource(ValueError):
    pass


class StrategyMismatch(AssertionError):
    def __init__(self, set_index: int, left: str, right: str, span):
        super().__init__(
            f"set {set_index}: {left} and {right} disagree; first differing span {span!r}"
        )
        self.set_index = set_index
        self.left = left
        self.right = right
        self.span = span


@dataclass(frozen=True)
class SentenceSet:
    sentences: tuple[str, ...]
    length_distribution: dict[int, float]
    seed: int


@dataclass(frozen=True)
class BenchResult:
    strategy: MatchStrategy
    blacklist_size: int
    set_size: int
    total_seconds: float
    init_seconds: float
    per_invocation_reinit: bool


@dataclass(frozen=True)
class InitTiming:
    size: int
    init_seconds: float
    seconds_per_term: float


def length_weights() -> list[float]:
    return [LENGTH_COEF * L * LENGTH_BASE**L for L in range(MIN_LENGTH, MAX_LENGTH + 1)]


def target_length_pmf() -> dict[int, float]:
    weights = length_weights()
    total = sum(weights)
    return {L: w / total for L, w in zip(range(MIN_LENGTH, MAX_LENGTH + 1), weights)}


def load_word_source(path: str | Path | None = None) -> list[str]:
    """Word list for sentence generation; bundled default, or any text file
    with one word per line (a real corpus can be supplied here)."""
    if path is None:
        raw = (resources.files("idpf") / "data" / "bench" / "words.txt").read_text(encoding="utf-8")
    else:
        raw = Path(path).read_text(encoding="utf-8")
    words = [line.strip() for line in raw.splitlines() if line.strip() and not line.startswith("#")]
    return words


def generate_sentences(
    n: int,
    seed: int,
    words: Sequence[str],
    inject: Sequence[str] = (),
    inject_rate: float = DEFAULT_INJECT_RATE,
) -> SentenceSet:
    """Deterministically generate n sentences under the given seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not words:
        raise EmptyWordSource("word source is empty")
    rng = random.Random(seed)
    lengths = rng.choices(range(MIN_LENGTH, MAX_LENGTH + 1), weights=length_weights(), k=n)
    inject = list(inject)
    rand = rng.random
    choice = rng.choice
    sentences = []
    for length in lengths:
        slots = [
            choice(inject) if inject and rand() < inject_rate else choice(words)
            for _ in range(length)
        ]
        sentences.append(" ".join(slots))
    counts: dict[int, int] = {}
    for length in lengths:
        counts[length] = counts.get(length, 0) + 1
    distribution = {L: c / n for L, c in sorted(counts.items())}
    return SentenceSet(tuple(sentences), distribution, seed)


def tv_distance(empirical: Mapping[int, float], target: Mapping[int, float] | None = None) -> float:
    """Total-variation distance between two length distributions."""
    if target is None:
        target = target_length_pmf()
    support = set(empirical) | set(target)
    return 0.5 * sum(abs(empirical.get(L, 0.0) - target.get(L, 0.0)) for L in support)


def synthetic_blacklist(size: int, seed: int = 97) -> list[str]:
    """Unique random letter-terms, for init-time measurements."""
    rng = random.Random(seed)
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    seen: set[str] = set()
    out: list[str] = []
    while len(out) < size:
        word = "".join(rng.choice(alphabet) for _ in range(rng.randint(4, 12)))
        if word not in seen:
            seen.add(word)
            out.append(word)
    return out


def measure_init(
    sizes: Iterable[int],
    strategy: MatchStrategy,
    repetitions: int = 5,
    seed: int = 97,
    min_window: float = 0.15,
) -> list[InitTiming]:
    """Median compile time per blacklist size, and its per-term ratio.

    Timing hygiene matters more than the arithmetic here: compiles run
    with the cyclic GC off (as timeit does), each sample is a window of
    enough compiles to dominate timer noise, and sizes are visited
    round-robin across repetition rounds so load drift on the host spreads
    over all sizes instead of skewing one of them.
    """
    if repetitions < 5:
        raise ValueError("at least 5 repetitions required")
    sizes = list(sizes)
    for size in sizes:
        if not (INIT_SIZE_FLOOR <= size <= INIT_SIZE_CEIL):
            raise ValueError(f"size {size} outside [{INIT_SIZE_FLOOR}, {INIT_SIZE_CEIL}]")

    surfaces_by_size: dict[int, list[str]] = {}
    loops_by_size: dict[int, int] = {}
    samples_by_size: dict[int, list[float]] = {size: [] for size in sizes}
    for size in sizes:
        surfaces = synthetic_blacklist(size, seed)
        started = time.perf_counter()
        matcher = compile_matcher(surfaces, strategy)  # warmup and window estimate
        estimate = time.perf_counter() - started
        del matcher
        surfaces_by_size[size] = surfaces
        loops_by_size[size] = max(1, int(min_window / max(estimate, 1e-9)) + 1)

    for _round in range(repetitions):
        for size in sizes:
            surfaces = surfaces_by_size[size]
            loops = loops_by_size[size]
            gc.collect()
            gc.disable()
            try:
                started = time.perf_counter()
                for _ in range(loops):
                    matcher = compile_matcher(surfaces, strategy)
                samples_by_size[size].append((time.perf_counter() - started) / loops)
            finally:
                gc.enable()
            del matcher

    results = []
    for size in sizes:
        median = statistics.median(samples_by_size[size])
        results.append(InitTiming(size, median, median / size))
    return results


def _sentences_of(sset) -> Sequence[str]:
    return sset.sentences if isinstance(sset, SentenceSet) else list(sset)


def measure_filter(
    strategy: MatchStrategy,
    blacklist: Sequence[Term | str],
    sset: SentenceSet | Sequence[str],
    per_invocation_reinit: bool = True,
    repetitions: int = 3,
) -> BenchResult:
    """Wall-clock filtering cost over a sentence set, averaged over runs.

    With ``per_invocation_reinit`` the matcher is rebuilt before every
    sentence, reproducing a service that reloads settings per invocation.
    """
    sentences = _sentences_of(sset)
    terms = coerce_terms(blacklist)
    totals = []
    inits = []
    for _ in range(repetitions):
        init_spent = 0.0
        gc.collect()
        gc.disable()
        try:
            started = time.perf_counter()
            if per_invocation_reinit:
                for sentence in sentences:
                    matcher = compile_matcher(terms, strategy)
                    init_spent += matcher.compile_seconds
                    matcher.find_matches(sentence)
            else:
                matcher = compile_matcher(terms, strategy)
                init_spent = matcher.compile_seconds
                for sentence in sentences:
                    matcher.find_matches(sentence)
            totals.append(time.perf_counter() - started)
        finally:
            gc.enable()
        inits.append(init_spent)
    return BenchResult(
        strategy=MatchStrategy(strategy),
        blacklist_size=len(terms),
        set_size=len(sentences),
        total_seconds=statistics.fmean(totals),
        init_seconds=statistics.fmean(inits),
        per_invocation_reinit=per_invocation_reinit,
    )


# Sentences are joined with a double newline before matching: one pass per
# set instead of one per sentence, and no multi-word term can straddle a
# boundary because term separators match exactly one whitespace character.
_JOINER = "\n\n"

_WORK: dict = {}


def _init_worker(joined_texts, surfaces):
    _WORK["texts"] = joined_texts
    _WORK["terms"] = coerce_terms(surfaces)


def _run_cell(task):
    set_index, strategy_value = task
    matcher = compile_matcher(_WORK["terms"], MatchStrategy(strategy_value))
    spans = matcher.find_matches(_WORK["texts"][set_index])
    return set_index, strategy_value, [s.key() for s in spans]


@dataclass(frozen=True)
class CompareResult:
    strategies: tuple[str, ...]
    counts: dict[str, tuple[int, ...]]

    def table(self) -> str:
        n_sets = len(next(iter(self.counts.values())))
        header = "strategy".ljust(8) + "".join(f"  S{i + 1:>6}" for i in range(n_sets))
        lines = [header]
        for strategy in self.strategies:
            row = strategy.ljust(8) + "".join(f"  {c:>7}" for c in self.counts[strategy])
            lines.append(row)
        return "\n".join(lines)


def compare_strategies(
    sets: Sequence[SentenceSet | Sequence[str]],
    blacklist: Sequence[Term | str],
    strategies: Sequence[MatchStrategy] | None = None,
    processes: int = 1,
) -> CompareResult:
    """Masked-count table per (set, strategy) with an exact span cross-check.

    Raises StrategyMismatch on the first differing span. Counts are
    deterministic and independent of ``processes`` (parallelism only
    spreads the per-set scans over workers).
    """
    strategies = list(strategies or MatchStrategy)
    if len(strategies) < 2:
        raise ValueError("need at least 2 strategies to compare")
    joined = [_JOINER.join(_sentences_of(s)) for s in sets]
    surfaces = [t.surface if isinstance(t, Term) else t for t in blacklist]
    tasks = [(i, s.value) for i in range(len(joined)) for s in strategies]

    signatures: dict[tuple[int, str], list] = {}
    if processes > 1:
        with Pool(processes, initializer=_init_worker, initargs=(joined, surfaces)) as pool:
            for set_index, strategy_value, sig in pool.imap_unordered(_run_cell, tasks):
                signatures[(set_index, strategy_value)] = sig
    else:
        _init_worker(joined, surfaces)
        for task in tasks:
            set_index, strategy_value, sig = _run_cell(task)
            signatures[(set_index, strategy_value)] = sig

    reference = strategies[0].value
    for set_index in range(len(joined)):
        base = signatures[(set_index, reference)]
        for strategy in strategies[1:]:
            other = signatures[(set_index, strategy.value)]
            if other != base:
                for left, right in zip(base, other):
                    if left != right:
                        raise StrategyMismatch(set_index, reference, strategy.value, (left, right))
                longer = base if len(base) > len(other) else other
                raise StrategyMismatch(
                    set_index, reference, strategy.value, longer[min(len(base), len(other))]
                )
    counts = {
        s.value: tuple(len(signatures[(i, s.value)]) for i in range(len(joined)))
        for s in strategies
    }
    return CompareResult(tuple(s.value for s in strategies), counts)


def _read_lines(path: str) -> list[str]:
    return [line for line in Path(path).read_text(encoding="utf-8").splitlines() if line]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="idp-bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a sentence set")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=42)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--words", default=None, help="word source file (default: bundled)")
    p_gen.add_argument("--inject", default=None, help="terms to inject (term file)")
    p_gen.add_argument("--inject-rate", type=float, default=DEFAULT_INJECT_RATE)

    p_time = sub.add_parser("time", help="time filtering over a sentence set")
    p_time.add_argument("--strategy", required=True, choices=[s.value for s in MatchStrategy])
    p_time.add_argument("--blacklist", required=True)
    p_time.add_argument("--set", dest="set_file", required=True)
    p_time.add_argument("--reinit", action="store_true")
    p_time.add_argument("--repetitions", type=int, default=3)
    p_time.add_argument("--out", default=None, help="append a CSV row here")

    p_init = sub.add_parser("init", help="measure initialization time by blacklist size")
    p_init.add_argument("--strategy", required=True, choices=[s.value for s in MatchStrategy])
    p_init.add_argument("--sizes", default="10000,20000,40000,60000,80000,100000")
    p_init.add_argument("--repetitions", type=int, default=5)
    p_init.add_argument("--out", default=None)

    p_cmp = sub.add_parser("compare", help="cross-check masked counts across strategies")
    p_cmp.add_argument("--sets", required=True, help="comma-separated sentence files")
    p_cmp.add_argument("--blacklist", required=True)
    p_cmp.add_argument("--processes", type=int, default=1)
    p_cmp.add_argument("--out", default=None)

    args = parser.parse_args(argv)

    if args.command == "gen":
        words = load_word_source(args.words)
        inject = _read_lines(args.inject) if args.inject else ()
        sset = generate_sentences(args.n, args.seed, words, inject, args.inject_rate)
        Path(args.out).write_text("\n".join(sset.sentences) + "\n", encoding="utf-8")
        print(f"wrote {len(sset.sentences)} sentences to {args.out}")
    elif args.command == "time":
        blacklist = _read_lines(args.blacklist)
        sentences = _read_lines(args.set_file)
        result = measure_filter(
            MatchStrategy(args.strategy), blacklist, sentences, args.reinit, args.repetitions
        )
        print(
            f"{result.strategy.value}: {result.total_seconds:.3f}s total "
            f"({result.init_seconds:.3f}s init) over {result.set_size} sentences, "
            f"{result.blacklist_size} terms, reinit={result.per_invocation_reinit}"
        )
        if args.out:
            new = not Path(args.out).exists()
            with Path(args.out).open("a", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                if new:
                    writer.writerow(
                        ["strategy", "blacklist_size", "set_size", "total_seconds",
                         "init_seconds", "reinit"]
                    )
                writer.writerow(
                    [result.strategy.value, result.blacklist_size, result.set_size,
                     f"{result.total_seconds:.6f}", f"{result.init_seconds:.6f}",
                     int(result.per_invocation_reinit)]
                )
    elif args.command == "init":
        sizes = [int(s) for s in args.sizes.split(",")]
        rows = measure_init(sizes, MatchStrategy(args.strategy), args.repetitions)
        print(f"{'size':>8} {'init_seconds':>13} {'seconds_per_term':>17}")
        for row in rows:
            print(f"{row.size:>8} {row.init_seconds:>13.6f} {row.seconds_per_term:>17.3e}")
        if args.out:
            with Path(args.out).open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(["size", "init_seconds", "seconds_per_term"])
                for row in rows:
                    writer.writerow([row.size, f"{row.init_seconds:.6f}", f"{row.seconds_per_term:.3e}"])
    else:
        sets = [_read_lines(p) for p in args.sets.split(",")]
        blacklist = _read_lines(args.blacklist)
        result = compare_strategies(sets, blacklist, processes=args.processes)
        print(result.table())
        if args.out:
            with Path(args.out).open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(["strategy"] + [f"S{i + 1}" for i in range(len(sets))])
                for strategy in result.strategies:
                    writer.writerow([strategy] + list(result.counts[strategy]))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
