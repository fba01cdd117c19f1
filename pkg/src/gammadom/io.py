"""CSV ingestion, preprocessing, draw persistence and report rendering."""

import csv
import os
from dataclasses import dataclass

import numpy as np

from .bootstrap import WeightedSample
from .errors import DataError, UsageError
from .mixture import GammaComponent, MixtureDraw
from .sampler import PosteriorSample


@dataclass(frozen=True)
class PreprocessConfig:
    income_column: str = "income"
    weight_column: str | None = None
    household_size_column: str | None = None
    group_column: str | None = None
    group_value: str | None = None
    deflator: float = 1.0
    equivalise: bool = False
    drop_nonpositive: bool = True

    def __post_init__(self):
        if self.deflator <= 0.0:
            raise UsageError("deflator must be positive")
        if self.equivalise and self.household_size_column is None:
            raise UsageError("equivalise requires a household size column")
        if (self.group_column is None) != (self.group_value is None):
            raise UsageError("group filtering needs both a column and a value")


@dataclass(frozen=True)
class LoadStats:
    n_rows: int
    n_dropped: int

    @property
    def pct_dropped(self):
        return 100.0 * self.n_dropped / self.n_rows if self.n_rows else 0.0


def _parse_number(raw, column, line_no):
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise DataError(f"line {line_no}: cannot parse {column}={raw!r} as a number") from None


def load_sample(path, cfg, label=None):
    """Read a CSV, equivalise/deflate incomes, drop non-positive rows.

    Returns (WeightedSample, LoadStats); the stats carry the count and
    percentage of dropped non-positive incomes.
    """
    incomes = []
    weights = []
    n_rows = 0
    n_dropped = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        needed = [cfg.income_column]
        for col in (cfg.weight_column, cfg.household_size_column, cfg.group_column):
            if col is not None:
                needed.append(col)
        missing = [c for c in needed if c not in header]
        if missing:
            raise UsageError(f"missing column(s) {missing} in {path}; header has {header}")
        for line_no, row in enumerate(reader, start=2):
            if cfg.group_column is not None and row[cfg.group_column] != cfg.group_value:
                continue
            n_rows += 1
            income = _parse_number(row[cfg.income_column], cfg.income_column, line_no)
            if cfg.equivalise:
                size = _parse_number(
                    row[cfg.household_size_column], cfg.household_size_column, line_no
                )
                if size <= 0:
                    raise DataError(f"line {line_no}: household size must be positive")
                income /= np.sqrt(size)
            income /= cfg.deflator
            if income <= 0.0:
                if cfg.drop_nonpositive:
                    n_dropped += 1
                    continue
                raise DataError(f"line {line_no}: non-positive income {income}")
            weight = (
                1.0
                if cfg.weight_column is None
                else _parse_number(row[cfg.weight_column], cfg.weight_column, line_no)
            )
            if weight <= 0.0:
                raise DataError(f"line {line_no}: non-positive weight {weight}")
            incomes.append(income)
            weights.append(weight)
    if not incomes:
        raise DataError(f"no usable rows in {path}")
    sample = WeightedSample(
        incomes=np.array(incomes),
        weights=np.array(weights),
        label=label if label is not None else os.path.basename(path),
    )
    return sample, LoadStats(n_rows=n_rows, n_dropped=n_dropped)


def atomic_write(path, text):
    """Write-temp-then-rename so readers never see a partial file."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def save_draws(sample, path):
    """One draw per line: K, then K+1 (weight, shape, mean) triples.

    Numbers carry 17 significant digits so doubles round-trip exactly.
    Metadata is kept in '#' header lines.
    """
    lines = []
    for key in sorted(sample.meta):
        lines.append(f"# {key} = {sample.meta[key]}")
    for draw in sample.draws:
        parts = [str(draw.truncation)]
        for w, c in zip(draw.weights, draw.components):
            parts.append(f"{w:.17g}")
            parts.append(f"{c.shape:.17g}")
            parts.append(f"{c.mean:.17g}")
        lines.append(" ".join(parts))
    atomic_write(path, "\n".join(lines) + "\n")


def load_draws(path):
    """Inverse of save_draws; validates every draw's invariants."""
    draws = []
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            tokens = line.split()
            try:
                k = int(tokens[0])
            except ValueError:
                raise DataError(f"{path}:{line_no}: bad truncation field {tokens[0]!r}") from None
            if len(tokens) != 1 + 3 * (k + 1):
                raise DataError(
                    f"{path}:{line_no}: expected {1 + 3 * (k + 1)} fields for K={k}, "
                    f"got {len(tokens)}"
                )
            try:
                values = [float(t) for t in tokens[1:]]
            except ValueError:
                raise DataError(f"{path}:{line_no}: unparseable number") from None
            weights = values[0::3]
            try:
                comps = [
                    GammaComponent(mean=mu, shape=v)
                    for v, mu in zip(values[1::3], values[2::3])
                ]
                draws.append(MixtureDraw(weights, comps))
            except ValueError as exc:
                raise DataError(f"{path}:{line_no}: {exc}") from None
    if not draws:
        raise DataError(f"no draws found in {path}")
    return PosteriorSample(draws=draws, meta=meta)
