"""Verification reports: per-check status with witnesses, JSON output and PNG figures."""
import json
import time
from contextlib import contextmanager
from pathlib import Path

SCHEMA = 1


class Report:
    def __init__(self, mode, config):
        self.mode = mode
        self.config = config
        self.checks = []
        self.figures = []  # (name, draw(ax))
        self.attachments = {}  # file name -> text, e.g. q-series windows of a failed comparison

    def add(self, name, status, detail="", **witness):
        if status not in ("pass", "fail", "skip"):
            raise ValueError(f"bad status {status}")
        seconds = witness.pop("seconds", None)
        self.checks.append({"name": name, "status": status, "detail": detail,
                            "witness": witness, "seconds": seconds})
        return self.checks[-1]

    @contextmanager
    def timed(self):
        box = {}
        t0 = time.perf_counter()
        yield box
        box["seconds"] = round(time.perf_counter() - t0, 3)

    @property
    def verdict(self):
        if any(c["status"] == "fail" for c in self.checks):
            return "fail"
        return "pass"

    def as_dict(self):
        return {"schema": SCHEMA, "mode": self.mode, "config": self.config,
                "checks": self.checks, "verdict": self.verdict}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=1, default=_jsonable)

    def summary(self):
        lines = [f"{self.mode}: {self.verdict.upper()}"]
        for c in self.checks:
            line = f"  [{c['status']:4}] {c['name']}"
            if c["detail"]:
                line += f": {c['detail']}"
            lines.append(line)
        return "\n".join(lines)

    def add_figure(self, name, draw):
        self.figures.append((name, draw))

    def write(self, out):
        """Write JSON to out and render figures next to it as <stem>_<name>.png."""
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.to_json())
        for name, text in self.attachments.items():
            out.with_name(f"{out.stem}_{name}").write_text(text)
        return [render_png(draw, out.with_name(f"{out.stem}_{name}.png")) for name, draw in self.figures]


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def render_png(draw, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=100)
    try:
        draw(ax)
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
    return str(path)


def coefficient_plot(series, title):
    """Plot |c_k| against k for a dict name -> list of Cyc."""
    def draw(ax):
        for name, coeffs in series.items():
            ys = [float(abs(c.embed())) for c in coeffs]
            ax.plot(range(len(ys)), ys, marker="o", ms=3, lw=1, label=name)
        ax.set_xlabel("k")
        ax.set_ylabel("|c_k|")
        ax.set_title(title)
        ax.legend(fontsize=8)
    return draw


def matrix_plot(M, title):
    def draw(ax):
        im = ax.imshow(M, cmap="viridis")
        ax.set_title(title)
        ax.set_xlabel("j")
        ax.set_ylabel("i")
        ax.figure.colorbar(im, ax=ax)
    return draw
