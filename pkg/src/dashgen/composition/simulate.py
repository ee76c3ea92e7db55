"""Seeded data simulation.

Values are plausible rather than statistically faithful: dimension labels
come from per-domain vocabulary pools, measures follow a declared shape
(trend, seasonal, uniform, pareto), temporal columns step daily, weekly,
monthly or quarterly based on the field name. Everything is a pure function
of (task, chart type, profile seed).
"""

from __future__ import annotations

import hashlib
import math
import random
from datetime import date, timedelta

from dashgen.composition.display import DisplayTask, MeasureShape, SimulationProfile, vocabulary_pool
from dashgen.dsl.model import ChartType, DatasetField, FieldKind, SimulatedDataset

_START_DATE = date(2024, 1, 1)


def _sub_rng(task: DisplayTask, chart_type: ChartType, profile: SimulationProfile) -> random.Random:
    key = "|".join(
        [
            str(profile.seed),
            profile.domain,
            task.title,
            task.analysis_task.value,
            chart_type.value,
        ]
        + [f"{f.name}:{f.kind.value}:{f.unit or ''}" for f in task.field_requirements]
    )
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def pool_values(domain: str, field_name: str) -> list[str]:
    """Vocabulary pool for a dimension field, with graceful fallbacks."""
    pool = vocabulary_pool(domain)
    dims: dict[str, list[str]] = pool["dimensions"]
    name = field_name.lower().strip()
    if name in dims:
        return list(dims[name])
    compact = name.replace(" ", "_")
    if compact in dims:
        return list(dims[compact])
    for key in dims:
        if key in name or name in key:
            return list(dims[key])
    geo = pool.get("geo_dimension")
    if name in ("geo", "location") and geo in dims:
        return list(dims[geo])
    if "category" in dims:
        return list(dims["category"])
    return [f"{field_name.title()} {i}" for i in range(1, 9)]


def _date_step(field_name: str) -> str:
    name = field_name.lower()
    if "quarter" in name:
        return "quarter"
    if "month" in name:
        return "month"
    if "week" in name:
        return "week"
    return "day"


def _dates(n: int, step: str) -> list[str]:
    if step == "day":
        return [(_START_DATE + timedelta(days=i)).isoformat() for i in range(n)]
    if step == "week":
        return [(_START_DATE + timedelta(weeks=i)).isoformat() for i in range(n)]
    months = 3 if step == "quarter" else 1
    out = []
    year, month = _START_DATE.year, _START_DATE.month
    for _ in range(n):
        out.append(date(year, month, 1).isoformat())
        month += months
        year += (month - 1) // 12
        month = (month - 1) % 12 + 1
    return out


def _measure_series(
    n: int, shape: MeasureShape, unit: str | None, rng: random.Random
) -> list[float]:
    percent = unit == "%"
    if shape is MeasureShape.TREND:
        v = rng.uniform(30, 50) if percent else rng.uniform(50, 500)
        ceiling = 95.0 if percent else None
        step = ((ceiling - v) / (n + 1) if ceiling else v * rng.uniform(0.03, 0.08))
        out = []
        for _ in range(n):
            out.append(round(v, 2))
            v += step * (0.5 + rng.random())
            if ceiling:
                v = min(v, ceiling)
        # Strictly increasing by construction, so a least-squares fit over
        # the index axis always has positive slope.
        for i in range(1, len(out)):
            if out[i] <= out[i - 1]:
                out[i] = round(out[i - 1] + 0.01, 2)
        return out
    if shape is MeasureShape.SEASONAL:
        base = rng.uniform(40, 60) if percent else rng.uniform(100, 600)
        period = rng.choice((6, 12))
        return [
            round(
                base
                * (1 + 0.25 * math.sin(2 * math.pi * i / period))
                * (1 + rng.uniform(-0.04, 0.04)),
                2,
            )
            for i in range(n)
        ]
    if shape is MeasureShape.PARETO:
        top = 100.0 if percent else rng.uniform(200, 900)
        ratio = rng.uniform(0.5, 0.75)
        values = [top * ratio**i for i in range(n)]
        if percent:
            total = sum(values)
            values = [v * 100.0 / total for v in values]
        return [round(v, 2) for v in values]
    lo, hi = (5.0, 95.0) if percent else (10.0, 1000.0)
    return [round(rng.uniform(lo, hi), 2) for _ in range(n)]


def simulate_data(
    task: DisplayTask, chart_type: ChartType, profile: SimulationProfile
) -> SimulatedDataset:
    """Simulate a dataset honoring the task's field requirements."""
    rng = _sub_rng(task, chart_type, profile)
    fields = tuple(task.field_requirements)
    temporal = task.temporal()
    dims = task.dimensions()
    measures = task.measures()
    lo, hi = profile.bounds_for(chart_type)
    target = rng.randint(lo, hi)
    part = task.part_of_whole()

    def shape_of(measure: DatasetField) -> MeasureShape:
        return profile.shape_for(measure, task.analysis_task, temporal is not None, part)

    columns: dict[str, list] = {}

    if chart_type is ChartType.MATRIX and len(dims) >= 2:
        a_vals = pool_values(profile.domain, dims[0].name)
        b_vals = pool_values(profile.domain, dims[1].name)
        a = min(len(a_vals), 6)
        b = max(2, min(len(b_vals), max(1, target // max(a, 1))))
        a_vals, b_vals = a_vals[:a], b_vals[:b]
        columns[dims[0].name] = [va for va in a_vals for _ in b_vals]
        columns[dims[1].name] = [vb for _ in a_vals for vb in b_vals]
        n = a * b
        for extra in dims[2:]:
            vals = pool_values(profile.domain, extra.name)
            columns[extra.name] = [rng.choice(vals) for _ in range(n)]
        for m in measures:
            columns[m.name] = _measure_series(n, shape_of(m), m.unit, rng)
    elif temporal is not None:
        series_dim = dims[0] if dims else None
        series = (
            pool_values(profile.domain, series_dim.name)[: min(3, target)]
            if series_dim
            else [None]
        )
        points = max(4, target // len(series))
        dates = _dates(points, _date_step(temporal.name))
        n = points * len(series)
        columns[temporal.name] = dates * len(series)
        if series_dim:
            columns[series_dim.name] = [s for s in series for _ in dates]
        for extra in dims[1:]:
            vals = pool_values(profile.domain, extra.name)
            columns[extra.name] = [rng.choice(vals) for _ in range(n)]
        for m in measures:
            shape = shape_of(m)
            col: list[float] = []
            for _ in series:
                col.extend(_measure_series(points, shape, m.unit, rng))
            columns[m.name] = col
    else:
        n = target
        if dims:
            primary_vals = pool_values(profile.domain, dims[0].name)
            n = min(n, len(primary_vals))
            n = max(n, min(lo, len(primary_vals)))
            columns[dims[0].name] = primary_vals[:n]
            for extra in dims[1:]:
                vals = pool_values(profile.domain, extra.name)
                columns[extra.name] = [rng.choice(vals) for _ in range(n)]
        if chart_type in (ChartType.TEXT, ChartType.GLYPH):
            n = 1
            for key in list(columns):
                columns[key] = columns[key][:1]
        for m in measures:
            columns[m.name] = _measure_series(n, shape_of(m), m.unit, rng)

    row_count = len(next(iter(columns.values()))) if columns else 0
    rows = tuple(
        tuple(columns[f.name][i] for f in fields) for i in range(row_count)
    )
    return SimulatedDataset(fields=fields, rows=rows)
