"""Plain-text output: fixed-width tables or ``key=value`` records, plus an
optional matplotlib figure for the bound corpus."""

from __future__ import annotations

from typing import Iterable, Sequence


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (tuple, list)):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


def _record_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return _cell(v).replace("\n", " ")


def format_fields(pairs: Iterable[tuple[str, object]], mode: str = "table") -> str:
    pairs = list(pairs)
    if mode == "records":
        return "".join(f"{k}={_record_value(v)}\n" for k, v in pairs)
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k:<{width}}  {_cell(v)}\n" for k, v in pairs)


def format_table(columns: Sequence[str], rows: Sequence[Sequence], mode: str = "table") -> str:
    if mode == "records":
        blocks = [format_fields(zip(columns, row), "records") for row in rows]
        return "\n".join(blocks)
    cells = [[_cell(v) for v in row] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    line = lambda vals: "  ".join(v.rjust(w) for v, w in zip(vals, widths)).rstrip() + "\n"
    out = line(columns) + line(["-" * w for w in widths])
    return out + "".join(line(r) for r in cells)


def format_checks(title: str, checks: Sequence[tuple[str, bool]], mode: str = "table",
                  extra: Sequence[tuple[str, object]] = ()) -> str:
    if mode == "records":
        pairs = [("name", title), *extra]
        pairs += [(f"check.{name}", ok) for name, ok in checks]
        return format_fields(pairs, "records")
    head = f"{title}\n" + "".join(f"  {k}: {_cell(v)}\n" for k, v in extra)
    body = "".join(f"  [{'pass' if ok else 'FAIL'}] {name}\n" for name, ok in checks)
    return head + body


def corpus_figure(rows, path: str, title: str = "") -> None:
    """Scatter of d(A*B) against the product Singleton bound, marking PMDS
    pairs, next to a histogram of the Kneser slack."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    bound = [r.bound for r in rows]
    dist = [r.d_AB for r in rows]
    colors = ["tab:green" if r.pmds else "tab:blue" for r in rows]
    ax1.scatter(bound, dist, c=colors, alpha=0.6)
    hi = max(bound + dist + [1]) + 1
    ax1.plot([0, hi], [0, hi], "k--", linewidth=1)
    ax1.set_xlabel("max{1, n - dim A - dim B + 2}")
    ax1.set_ylabel("d(A*B)")
    ax1.set_title("product Singleton bound (green: equality)")
    slack = [r.slack for r in rows]
    ax2.hist(slack, bins=range(0, max(slack + [0]) + 2), align="left", rwidth=0.8)
    ax2.set_xlabel("Kneser slack")
    ax2.set_ylabel("pairs")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)
