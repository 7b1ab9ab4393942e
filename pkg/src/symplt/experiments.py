"""Statistics tables for the five numerical experiments and their output formats.

Each experiment produces one :class:`ExperimentStats` row per parameter
value (t or n). Rows are independent; a row whose factorization breaks
down is kept and marked failed instead of aborting the sweep.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import SympltError
from .factor import FactorizationOutput, factor_w1, factor_w2
from .generators import RngStream, beta_hilbert_symplectic, perturbed_symplectic, random_spectrum_symplectic, s_of_t
from .linalg import Matrix, condition_number, inverse, two_norm
from .symplectic import symplecticity_defect, symplectic_inverse

PI = math.pi
EXAMPLE1_T = (PI, 1.5 * PI, 2 * PI, 2.5 * PI)
EXAMPLE1_LABELS = ("t=pi", "t=3pi/2", "t=2pi", "t=5pi/2")
EXAMPLE3_T = (0.0, 1e-6, 0.5, 1.0)
EXAMPLE4_N = (10, 16, 20, 24)

STAT_FIELDS = (
    "kappa_a",
    "kappa_a11",
    "dec_w1",
    "dec_w2",
    "symp_a",
    "symp_l_w1",
    "symp_l_w2",
    "delta_a",
    "delta_l_w1",
    "delta_l_w2",
    "f11_norm",
    "f12_w1",
    "f12_w2",
)

STAT_LABELS = {
    "kappa_a": "κ₂(A)",
    "kappa_a11": "κ₂(A₁₁)",
    "dec_w1": "dec_W1",
    "dec_w2": "dec_W2",
    "symp_a": "sympA",
    "symp_l_w1": "sympL_W1",
    "symp_l_w2": "sympL_W2",
    "delta_a": "Δ(A)",
    "delta_l_w1": "ΔL_W1",
    "delta_l_w2": "ΔL_W2",
    "f11_norm": "‖F₁₁‖",
    "f12_w1": "‖F₁₂‖ from W1",
    "f12_w2": "‖F₁₂‖ from W2",
}

# Figure panels for the Example 5 sweep: file suffix -> plotted statistics.
FIGURE_PANELS = {
    "fig1_kappa": ("kappa_a",),
    "fig1_dec": ("dec_w1", "dec_w2"),
    "fig2_symp_a": ("symp_a",),
    "fig2_symp_l": ("symp_l_w1", "symp_l_w2"),
    "fig3_delta_a": ("delta_a",),
    "fig3_delta_l": ("delta_l_w1", "delta_l_w2"),
}

NAN = float("nan")


@dataclass
class ExperimentStats:
    label: str
    x: float
    kappa_a: float = NAN
    kappa_a11: float = NAN
    dec_w1: float = NAN
    dec_w2: float = NAN
    symp_a: float = NAN
    symp_l_w1: float = NAN
    symp_l_w2: float = NAN
    delta_a: float = NAN
    delta_l_w1: float = NAN
    delta_l_w2: float = NAN
    f11_norm: float = NAN
    f12_w1: float = NAN
    f12_w2: float = NAN
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error


@dataclass
class RunConfig:
    experiment_id: int
    seed: int = 0
    n_max: int = 250
    n: int = 5
    s: float = 3.0
    t_values: tuple[float, ...] | None = None
    n_values: tuple[int, ...] | None = None
    inverse_method: str = "symplectic"
    fmt: str = "markdown"
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment_id not in (1, 2, 3, 4, 5):
            raise ValueError(f"experiment id must be in 1..5, got {self.experiment_id}")
        if self.fmt not in ("markdown", "csv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.inverse_method not in ("symplectic", "lu"):
            raise ValueError(f"unknown inverse method {self.inverse_method!r}")
        if self.experiment_id == 5 and (self.n_max < 2 or self.n_max % 2):
            raise ValueError(f"n_max must be a positive even integer, got {self.n_max}")


def _label_t(t: float) -> str:
    for value, label in zip(EXAMPLE1_T, EXAMPLE1_LABELS):
        if t == value:
            return label
    return f"t={t:g}"


def compute_stats(label: str, x: float, a: Matrix) -> ExperimentStats:
    """Factor ``a`` with both algorithms and collect the thirteen statistics."""
    row = ExperimentStats(label=label, x=float(x))
    n = a.shape[0] // 2
    try:
        row.kappa_a = condition_number(a)
        row.kappa_a11 = condition_number(a[:n, :n])
        d = symplecticity_defect(a)
        row.delta_a, row.symp_a = d.delta, d.symp_rel
        outs: dict[str, FactorizationOutput] = {}
        for tag, algo in (("w1", factor_w1), ("w2", factor_w2)):
            try:
                outs[tag] = algo(a)
            except SympltError as exc:
                row.error += f"{tag}: {exc}; "
        for tag, out in outs.items():
            res = out.residual
            norm_l = two_norm(out.factor.assemble()).value
            setattr(row, f"dec_{tag}", out.dec)
            setattr(row, f"delta_l_{tag}", res.delta_l)
            setattr(row, f"symp_l_{tag}", res.delta_l / norm_l**2)
            setattr(row, f"f12_{tag}", res.f12_norm)
            row.f11_norm = res.f11_norm
    except SympltError as exc:
        row.error += str(exc)
    row.error = row.error.strip().rstrip(";")
    return row


def example1_matrix(t: float) -> Matrix:
    s = s_of_t(t)
    return s.T @ s


def example2_matrix(t: float, inverse_method: str = "symplectic") -> Matrix:
    """(S^T S)^{-1}; by default through the symplectic inverse J^T A^T J."""
    a = example1_matrix(t)
    if inverse_method == "symplectic":
        return symplectic_inverse(a)
    inv = inverse(a)
    return (inv + inv.T) / 2.0


def run_example1(t_values=EXAMPLE1_T) -> list[ExperimentStats]:
    return [compute_stats(_label_t(t), t, example1_matrix(t)) for t in t_values]


def run_example2(t_values=EXAMPLE1_T, inverse_method: str = "symplectic") -> list[ExperimentStats]:
    return [compute_stats(_label_t(t), t, example2_matrix(t, inverse_method)) for t in t_values]


def run_example3(n: int = 5, s: float = 3.0, t_values=EXAMPLE3_T, seed: int = 0) -> list[ExperimentStats]:
    """Perturbed family; the stream is re-seeded for every t, so every row
    perturbs the same symplectic matrix."""
    rows = []
    for t in t_values:
        a = perturbed_symplectic(n, s, t, RngStream(seed))
        rows.append(compute_stats(f"t={t:g}", t, a))
    return rows


def run_example4(n_values=EXAMPLE4_N) -> list[ExperimentStats]:
    """Beta/Hilbert block-congruence family. Each entry of ``n_values`` is the full order of A,
    so G = beta_matrix(N/2) and C = hilbert(N/2)."""
    rows = []
    for order in n_values:
        if order < 2 or order % 2:
            raise ValueError(f"matrix order must be a positive even integer, got {order}")
        rows.append(compute_stats(f"n={order}", order, beta_hilbert_symplectic(order // 2)))
    return rows


def run_example5(n_max: int = 250, seed: int = 0) -> list[ExperimentStats]:
    if n_max < 2 or n_max % 2:
        raise ValueError(f"n_max must be a positive even integer, got {n_max}")
    rows = []
    for n in range(2, n_max + 1, 2):
        a = random_spectrum_symplectic(n, RngStream.derive(seed, n))
        rows.append(compute_stats(f"n={n}", n, a))
    return rows


def run_experiment(cfg: RunConfig) -> list[ExperimentStats]:
    i = cfg.experiment_id
    if i == 1:
        return run_example1(cfg.t_values or EXAMPLE1_T)
    if i == 2:
        return run_example2(cfg.t_values or EXAMPLE1_T, cfg.inverse_method)
    if i == 3:
        return run_example3(cfg.n, cfg.s, cfg.t_values or EXAMPLE3_T, cfg.seed)
    if i == 4:
        return run_example4(cfg.n_values or EXAMPLE4_N)
    return run_example5(cfg.n_max, cfg.seed)


def _sci(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.4e}"


def _markdown(stats: list[ExperimentStats]) -> str:
    lines = ["| | " + " | ".join(s.label for s in stats) + " |", "|---" * (len(stats) + 1) + "|"]
    for name in STAT_FIELDS:
        cells = [_sci(getattr(s, name)) for s in stats]
        lines.append(f"| {STAT_LABELS[name]} | " + " | ".join(cells) + " |")
    failed = [s for s in stats if not s.ok]
    if failed:
        lines.append("")
        lines.extend(f"- {s.label}: failed ({s.error})" for s in failed)
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("label", "x") + STAT_FIELDS + ("error",)


def _csv(stats: list[ExperimentStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in stats:
        row = [s.label, repr(s.x)] + [repr(float(getattr(s, k))) for k in STAT_FIELDS] + [s.error]
        w.writerow(row)
    return buf.getvalue()


def _json(stats: list[ExperimentStats]) -> str:
    def clean(d):
        return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in d.items()}

    return json.dumps([clean(asdict(s)) for s in stats], indent=2, ensure_ascii=False) + "\n"


def emit_table(stats: list[ExperimentStats], fmt: str = "markdown") -> str:
    if not stats:
        raise ValueError("no rows to emit")
    if fmt == "markdown":
        return _markdown(stats)
    if fmt == "csv":
        return _csv(stats)
    if fmt == "json":
        return _json(stats)
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[ExperimentStats]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        kwargs = {k: float(rec[k]) for k in ("x",) + STAT_FIELDS}
        rows.append(ExperimentStats(label=rec["label"], error=rec["error"], **kwargs))
    return rows


def parse_json(text: str) -> list[ExperimentStats]:
    names = {f.name for f in fields(ExperimentStats)}
    out = []
    for rec in json.loads(text):
        kw = {k: (NAN if v is None else v) for k, v in rec.items() if k in names}
        out.append(ExperimentStats(**kw))
    return out


def figure_series(stats: list[ExperimentStats]) -> dict[str, str]:
    """One CSV per figure panel: x column followed by the plotted statistics."""
    out = {}
    for panel, cols in FIGURE_PANELS.items():
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n",) + cols)
        for s in stats:
            w.writerow([f"{s.x:g}"] + [repr(float(getattr(s, c))) for c in cols])
        out[panel] = buf.getvalue()
    return out


def write_outputs(cfg: RunConfig, stats: list[ExperimentStats]) -> list[Path]:
    """Write the table (and, for experiment 5, the figure series) next to ``cfg.out``."""
    if cfg.out is None:
        raise ValueError("RunConfig.out is not set")
    path = Path(cfg.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(emit_table(stats, cfg.fmt), encoding="utf-8")
    written = [path]
    if cfg.experiment_id == 5:
        for panel, text in figure_series(stats).items():
            p = path.with_name(f"{path.stem}.{panel}.csv")
            p.write_text(text, encoding="utf-8")
            written.append(p)
    return written


def summary_check(stats: list[ExperimentStats]) -> dict[str, float]:
    """Worst-case figures across a sweep, handy for quick eyeballing."""
    ok = [s for s in stats if s.ok]
    if not ok:
        return {}
    return {
        "max_dec_w1": max(s.dec_w1 for s in ok),
        "max_dec_w2": max(s.dec_w2 for s in ok),
        "max_kappa_a": max(s.kappa_a for s in ok),
        "failed_rows": float(len(stats) - len(ok)),
    }

