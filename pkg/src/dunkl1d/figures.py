"""PNG rendering for CLI outputs: function curves, spectra, and suite-report
case ratios, written next to the data files they accompany."""

import math

import numpy as np


def _plt():
    # Imported lazily so the library never pays matplotlib's startup cost;
    # Agg keeps rendering headless.
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    return plt


def save_function_figure(f, path, title: str | None = None) -> str:
    """Plot a GridFunction against its nodes; complex data gets re/im traces."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    x = f.grid.nodes
    if np.iscomplexobj(f.values):
        ax.plot(x, f.values.real, lw=1.0, label="re")
        ax.plot(x, f.values.imag, lw=1.0, label="im")
        ax.legend(frameon=False)
    else:
        ax.plot(x, f.values, lw=1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_spectrum_figure(F, path, title: str | None = None) -> str:
    """Plot a SpectralFunction: real and imaginary parts over lambda."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    lam = F.freq_grid.nodes
    vals = np.asarray(F.values)
    ax.plot(lam, vals.real, lw=1.0, label="re")
    if np.iscomplexobj(vals) and np.max(np.abs(vals.imag)) > 0.0:
        ax.plot(lam, vals.imag, lw=1.0, label="im")
    ax.legend(frameon=False)
    ax.set_xlabel("lambda")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_report_figure(report_dict: dict, path) -> str:
    """Case-ratio overview for one suite report (the as_dict() form).

    Each case is one marker; failed cases are drawn red.  Declared bounds
    appear as horizontal lines.  The y-axis switches to log scale when the
    ratios span more than two decades.
    """
    plt = _plt()
    cases = report_dict["cases"]
    summary = report_dict["summary"]
    n = len(cases)
    xs = np.arange(n)
    ratios = np.array([c["ratio"] if c["ratio"] is not None else math.nan
                       for c in cases], dtype=np.float64)
    passed = np.array([bool(c["pass"]) for c in cases])

    fig, ax = plt.subplots(figsize=(max(8.0, 0.16 * n + 2.0), 4.5))
    ax.plot(xs[passed], ratios[passed], "o", ms=4, color="tab:blue",
            label="pass")
    if (~passed).any():
        ax.plot(xs[~passed], ratios[~passed], "o", ms=5, color="tab:red",
                label="fail")
    bounds = sorted({c["declared_bound"] for c in cases
                     if c["declared_bound"] is not None})
    for b in bounds:
        ax.axhline(b, color="black", lw=0.8, ls="--", alpha=0.6)
    finite = ratios[np.isfinite(ratios) & (ratios > 0.0)]
    if finite.size and float(np.max(finite)) / float(np.min(finite)) > 100.0:
        ax.set_yscale("log")
    ax.set_xlabel("case index")
    ax.set_ylabel("ratio")
    ax.set_title(f"{report_dict['suite']}  k={report_dict['k']:g}  "
                 f"pass={summary['pass']}  "
                 f"{summary['n_pass']}/{summary['n_cases']}")
    ax.legend(frameon=False, loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
