"""Matplotlib figures for envelopes and the accumulation curve."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# 800 x 600 viewport: SVG units are points
FIGSIZE = (800 / 72, 600 / 72)
SVG_DPI = 72


def _svg_text(fig) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "qpstairs", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", dpi=SVG_DPI, metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _linspace(a: float, b: float, n: int) -> list[float]:
    return [a + (b - a) * k / (n - 1) for k in range(n)]


def envelope_figure(env, samples: int = 400):
    lo, hi = float(env.z_lo), float(env.z_hi)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    zs = _linspace(lo, hi, samples)
    one_minus = 1.0 - float(env.b) ** 2
    ax.plot(zs, [(z / one_minus) ** 0.5 for z in zs], color="0.5", ls="--", lw=1, label="volume")
    label = "max of obstructions"
    for seg in env.segments:
        if seg.slope is None:
            continue
        za, zb = float(seg.z_a), float(seg.z_b)
        ys = [float(seg.slope) * z + float(seg.intercept) for z in (za, zb)]
        ax.plot([za, zb], ys, color="C0", lw=2, label=label)
        label = None
    for k, z, val in env.corners:
        ax.plot([float(z)], [float(val)], "o", color="C3", ms=3)
    ax.set_xticks([lo, hi], [str(env.z_lo), str(env.z_hi)])
    ax.set_xlim(lo, hi)
    ax.set_xlabel("z")
    ax.set_ylabel("lower bound for c(z)")
    ax.set_title(f"b = {env.b}")
    ax.legend(loc="best", fontsize="small")
    return fig


def envelope_svg(env) -> str:
    return _svg_text(envelope_figure(env))


def save_envelope(env, path: str) -> None:
    """Write the envelope figure; the format follows the file suffix."""
    fig = envelope_figure(env)
    if path.endswith(".svg"):
        with open(path, "w") as fh:
            fh.write(_svg_text(fig))
        return
    fig.savefig(path, dpi=100, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)


def acc_figure(rows):
    """rows: (b, acc(b), volume at acc(b)) as floats."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    bs = [r[0] for r in rows]
    ax.plot(bs, [r[1] for r in rows], label="acc(b)")
    ax.axvline(1 / 3, color="0.6", lw=0.8, ls=":")
    ax.set_xlabel("b")
    ax.set_ylabel("z")
    ax.legend()
    return fig


def save_figure(fig, path: str) -> None:
    if path.endswith(".svg"):
        with open(path, "w") as fh:
            fh.write(_svg_text(fig))
    else:
        fig.savefig(path, dpi=100)
        plt.close(fig)
