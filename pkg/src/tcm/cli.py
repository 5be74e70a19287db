"""Command-line surface, serialization, and the class-number cache.

The only module that performs I/O.  Data rows go to stdout in one of
three formats (table, json, csv); progress and warnings go to stderr so
the data stream stays machine-clean.  Exit codes: 0 success, 2 usage
error, 3 serialization failure, 4 cache-integrity failure.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .analytics import (
    char_euler_product,
    landau_liminf_check,
    mertens_product,
    phi_bound_scan,
)
from .errors import CacheFormatError, CacheIntegrityError, CapExceededError
from .feasibility import bound_records, constant_over
from .galois_image import (
    cn_order,
    kernel_size,
    max_stabilizer_order,
    verify_homotheties,
)
from .ideal_arith import BRUTE_FORCE_CAP, brute_force_phi, ideal_norm, phi_K_of_N, principal_ideal
from .quad_core import (
    class_number,
    class_number_dirichlet,
    fundamental_discriminants,
    is_fundamental,
    unit_count,
)

CACHE_HEADER = "tcm-cache-v1"
DEFAULT_CACHE_PATH = "./tcm-cache-v1.csv"
DEFAULT_CACHE_CAP = 10**4


def _round12(x: float) -> float:
    """Clamp a float to 12 significant digits (the serialized precision)."""
    return float(f"{x:.12g}")


def worker_count() -> int:
    """Parallelism override from TCM_THREADS (default 1)."""
    raw = os.environ.get("TCM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------- envelope


def make_envelope(command: str, params: dict, rows: list[dict], **meta_extra) -> dict:
    meta = {
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    meta.update(meta_extra)
    return {"command": command, "params": params, "rows": rows, "meta": meta}


def serialize_json(envelope: dict) -> str:
    return json.dumps(envelope, indent=2)


def serialize_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if row[k] is None else row[k] for k in header])
    return buf.getvalue().rstrip("\n")


def serialize_table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    header = list(rows[0].keys())
    cells = [[("-" if row[k] is None else str(row[k])) for k in header] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(header)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def emit(envelope: dict, fmt: str) -> None:
    """Write the envelope to stdout in the chosen format; exit 3 on failure."""
    try:
        if fmt == "json":
            text = serialize_json(envelope)
        elif fmt == "csv":
            text = serialize_csv(envelope["rows"])
        else:
            text = serialize_table(envelope["rows"])
    except Exception as exc:  # pragma: no cover - exercised via injection in tests
        print(f"serialization failed: {exc}", file=sys.stderr)
        sys.exit(3)
    click.echo(text)


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv", "table"]),
    default="table",
    show_default=True,
    help="Output format for data rows.",
)


# ------------------------------------------------------------------ cache


@dataclass
class ClassNumberCache:
    """Map from fundamental discriminant to (class number, unit count)."""

    entries: dict[int, tuple[int, int]]


def _cache_entry(value: int) -> tuple[int, int, int]:
    return (value, class_number(value), unit_count(value))


def build_cache(cap: int = DEFAULT_CACHE_CAP, workers: int = 1) -> ClassNumberCache:
    discs = fundamental_discriminants(cap)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            triples = list(pool.map(_cache_entry, discs, chunksize=64))
    else:
        triples = [_cache_entry(value) for value in discs]
    return ClassNumberCache(entries={v: (h, w) for v, h, w in triples})


def save_cache(cache: ClassNumberCache, path: str | Path) -> None:
    lines = [CACHE_HEADER]
    for value in sorted(cache.entries, key=abs):
        h, w = cache.entries[value]
        lines.append(f"{value},{h},{w}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_cache(path: str | Path) -> ClassNumberCache:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CacheFormatError(f"cannot read cache file {path}: {exc}") from exc
    if not lines or lines[0].strip() != CACHE_HEADER:
        raise CacheFormatError(f"{path} does not start with the header {CACHE_HEADER!r}")
    entries: dict[int, tuple[int, int]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        try:
            value, h, w = (int(p) for p in parts)
        except ValueError as exc:
            raise CacheFormatError(f"{path}:{lineno}: malformed line {line!r}") from exc
        entries[value] = (h, w)
    return ClassNumberCache(entries=entries)


def validate_cache(
    cache: ClassNumberCache, fraction: float = 0.01, rng: random.Random | None = None
) -> int:
    """Re-derive a sample of entries from the character-sum oracle.

    Returns the number of entries checked; raises CacheIntegrityError on
    the first disagreement.
    """
    values = sorted(cache.entries, key=abs)
    if not values:
        return 0
    rng = rng or random.Random(0)
    k = max(1, round(fraction * len(values)))
    sample = values if k >= len(values) else rng.sample(values, k)
    for value in sample:
        h, w = cache.entries[value]
        expected_h = class_number_dirichlet(value)
        expected_w = unit_count(value)
        if (h, w) != (expected_h, expected_w):
            raise CacheIntegrityError(
                f"cache entry D={value} has (h, w)=({h}, {w}), oracle says "
                f"({expected_h}, {expected_w})"
            )
    return len(sample)


def cache_io(
    path: str | Path,
    cap: int = DEFAULT_CACHE_CAP,
    validate_fraction: float = 0.01,
    rebuild: bool = False,
) -> ClassNumberCache:
    """Load the cache at path, rebuilding it if absent or corrupt.

    A corrupt file is rebuilt with a warning; a validation mismatch
    propagates as CacheIntegrityError (hard failure).
    """
    path = Path(path)
    cache = None
    if path.exists() and not rebuild:
        try:
            cache = load_cache(path)
        except CacheFormatError as exc:
            print(f"warning: {exc}; rebuilding", file=sys.stderr)
        else:
            missing = [d for d in fundamental_discriminants(cap) if d not in cache.entries]
            if missing:
                print(
                    f"warning: cache covers {len(cache.entries)} entries but "
                    f"{len(missing)} discriminants with |D| <= {cap} are absent; rebuilding",
                    file=sys.stderr,
                )
                cache = None
    if cache is None:
        workers = worker_count()
        if cap >= 2000:
            print(
                f"building class-number cache for |D| <= {cap} (workers={workers})",
                file=sys.stderr,
            )
        cache = build_cache(cap=cap, workers=workers)
        save_cache(cache, path)
    validate_cache(cache, fraction=validate_fraction)
    return cache


# ---------------------------------------------------------------- commands


@click.group()
@click.version_option(version=__version__, prog_name="tcm")
@click.option(
    "--cache",
    "cache_path",
    type=click.Path(dir_okay=False),
    default=DEFAULT_CACHE_PATH,
    show_default=True,
    help="Class-number cache file.",
)
@click.pass_context
def cli(ctx, cache_path):
    """Explicit per-degree bounds on CM elliptic-curve torsion, plus the
    exact and analytic machinery behind them."""
    ctx.ensure_object(dict)
    ctx.obj["cache_path"] = cache_path


@cli.command()
@click.option("--d-min", type=int, required=True, help="Smallest degree.")
@click.option("--d-max", type=int, required=True, help="Largest degree.")
@_format_option
def bound(d_min, d_max, fmt):
    """Per-degree torsion bounds B(d) with maximizing shapes."""
    if not 1 <= d_min <= d_max <= 10**6:
        raise click.UsageError(f"need 1 <= d-min <= d-max <= 10^6, got [{d_min}, {d_max}]")
    records = bound_records(d_min, d_max)
    rows = [bound_record_row(rec) for rec in records]
    ratios = [rec for rec in records if rec.ratio is not None]
    constant = None
    if ratios:
        est = constant_over(records)
        constant = {"value": _round12(est.value), "argmax_d": est.argmax_d}
        print(
            f"running constant over d in [{max(d_min, 3)}, {d_max}]: "
            f"{est.value:.12g} at d={est.argmax_d}",
            file=sys.stderr,
        )
    envelope = make_envelope(
        "bound", {"d_min": d_min, "d_max": d_max, "format": fmt}, rows, constant=constant
    )
    emit(envelope, fmt)


def bound_record_row(rec) -> dict:
    return {
        "d": rec.d,
        "a": rec.best_shape.a,
        "b": rec.best_shape.b,
        "bound": rec.bound,
        "ratio": None if rec.ratio is None else _round12(rec.ratio),
    }


@cli.command()
@click.option("--disc", type=int, required=True, help="Fundamental discriminant (< 0).")
@click.option("--n", type=int, required=True, help="Generator of the principal ideal.")
@_format_option
def phi(disc, n, fmt):
    """Ideal Euler function of (n), with brute-force cross-check when small."""
    try:
        if not is_fundamental(disc):
            raise click.UsageError(f"{disc} is not a fundamental discriminant")
        if n < 1:
            raise click.UsageError(f"need n >= 1, got {n}")
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    ideal = principal_ideal(disc, n)
    value = phi_K_of_N(disc, n)
    brute = brute_force_phi(disc, n) if n <= BRUTE_FORCE_CAP else None
    rows = [
        {
            "disc": disc,
            "n": n,
            "phi": value,
            "norm": ideal_norm(ideal),
            "factorization": str(ideal),
            "brute_force": brute,
            "agree": None if brute is None else brute == value,
        }
    ]
    emit(make_envelope("phi", {"disc": disc, "n": n, "format": fmt}, rows), fmt)


@cli.command()
@click.option("--disc", type=int, required=True, help="Discriminant (< 0, 0 or 1 mod 4).")
@click.option("--p", type=int, default=None, help="Prime level.")
@click.option("--a", "level_a", type=int, default=None, help="Exponent A (>= 0).")
@click.option("--b", "level_b", type=int, default=None, help="Kernel depth B (>= 1).")
@click.option("--n", type=int, default=None, help="Composite level: group order mode.")
@_format_option
def galois(disc, p, level_a, level_b, n, fmt):
    """Unit-group scans: group orders, reduction kernels, point stabilizers."""
    try:
        if n is not None:
            order = cn_order(disc, n)
            brute = brute_force_phi(disc, n) if n <= BRUTE_FORCE_CAP else None
            rows = [
                {
                    "disc": disc,
                    "n": n,
                    "order": order,
                    "brute_force": brute,
                    "agree": None if brute is None else brute == order,
                    "homotheties": verify_homotheties(disc, n),
                }
            ]
            params = {"disc": disc, "n": n, "format": fmt}
        elif p is not None and level_a is not None and level_b is not None:
            size = kernel_size(disc, p, level_a, level_b)
            rows = [
                {
                    "disc": disc,
                    "p": p,
                    "A": level_a,
                    "B": level_b,
                    "kernel_size": size,
                    "expected": p ** (2 * level_b),
                    "surjective": True,
                }
            ]
            params = {"disc": disc, "p": p, "A": level_a, "B": level_b, "format": fmt}
        elif p is not None and level_a is not None:
            report = max_stabilizer_order(disc, p, level_a)
            rows = [
                {
                    "disc": disc,
                    "p": p,
                    "A": level_a,
                    "split_type": report.split_type.value,
                    "max_stabilizer_order": report.max_stabilizer_order,
                    "expected_divisor": report.expected_divisor,
                    "divides": report.divides,
                }
            ]
            params = {"disc": disc, "p": p, "A": level_a, "format": fmt}
        else:
            raise click.UsageError("need either --n, or --p with --a (and optionally --b)")
    except CapExceededError as exc:
        raise click.UsageError(str(exc)) from exc
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    emit(make_envelope("galois", params, rows), fmt)


@cli.group()
def analytics():
    """Product estimates and empirical constant scans."""


@analytics.command()
@click.option("--x", type=int, required=True, help="Prime cutoff.")
@_format_option
def mertens(x, fmt):
    """Product of (1 - 1/p) over primes p <= x."""
    try:
        est = mertens_product(x)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"x": est.x, "value": _round12(est.value), "terms": est.terms}]
    emit(make_envelope("analytics.mertens", {"x": x, "format": fmt}, rows), fmt)


@analytics.command()
@click.option("--disc", type=int, required=True)
@click.option("--x", type=int, required=True, help="Prime cutoff.")
@_format_option
def product(disc, x, fmt):
    """Character Euler product of (1 - chi(p)/p) over primes p <= x."""
    try:
        est = char_euler_product(disc, x)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [{"disc": disc, "x": est.x, "value": _round12(est.value), "terms": est.terms}]
    emit(make_envelope("analytics.product", {"disc": disc, "x": x, "format": fmt}, rows), fmt)


@analytics.command()
@click.option("--disc", type=int, required=True)
@click.option("--x", type=int, required=True, help="Norm cutoff.")
@_format_option
def scan(disc, x, fmt):
    """Minimum of phi_K(c) loglog|c| / |c| over ideals with 3 <= |c| <= x."""
    try:
        result = phi_bound_scan(disc, x)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [
        {
            "disc": disc,
            "x": x,
            "min_value": _round12(result.min_value),
            "argmin_norm": ideal_norm(result.argmin_ideal),
            "argmin_ideal": str(result.argmin_ideal),
        }
    ]
    emit(make_envelope("analytics.scan", {"disc": disc, "x": x, "format": fmt}, rows), fmt)


@analytics.command()
@click.option("--disc", type=int, required=True)
@click.option("--x", type=int, required=True, help="Norm cutoff (>= 100).")
@_format_option
def landau(disc, x, fmt):
    """Tail minimum of phi_K(a) loglog|a| / |a| against e^-gamma / L(1,chi)."""
    try:
        result = landau_liminf_check(disc, x)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = [
        {
            "disc": disc,
            "x": x,
            "empirical_min_tail": _round12(result.empirical_min_tail),
            "target": _round12(result.target),
        }
    ]
    emit(make_envelope("analytics.landau", {"disc": disc, "x": x, "format": fmt}, rows), fmt)


@cli.command()
@click.option("--rebuild", is_flag=True, help="Rebuild even if the file exists.")
@click.option("--cap", type=int, default=DEFAULT_CACHE_CAP, show_default=True)
@click.option("--validate-all", is_flag=True, help="Revalidate every entry, not a sample.")
@click.pass_context
def cache(ctx, rebuild, cap, validate_all):
    """Build, load, and revalidate the class-number cache."""
    path = ctx.obj["cache_path"]
    fraction = 1.0 if validate_all else 0.01
    try:
        result = cache_io(path, cap=cap, validate_fraction=fraction, rebuild=rebuild)
    except CacheIntegrityError as exc:
        print(f"cache integrity failure: {exc}", file=sys.stderr)
        sys.exit(4)
    checked = "all entries" if validate_all else "a 1% sample"
    click.echo(f"cache at {path}: {len(result.entries)} entries, revalidated {checked}")


def main():
    cli(obj={})


if __name__ == "__main__":
    main()
