"""確定性 SVG 折線圖。

在 matplotlib SVG 畫布上繪製，使用固定的 hash salt 且不含日期中繼資料，
相同資料產生逐位元組相同的檔案。
"""
import io

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

SVG_RC = {
    'svg.hashsalt': 'casimir',
    'svg.fonttype': 'none',
    'font.family': 'DejaVu Sans',
}


def render_line_chart(xs, ys, *, xlabel, ylabel, title=None, zero_line=True):
    """單一數列折線圖，回傳 SVG 1.1 文件字串"""
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(6.4, 4.2))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot()
        ax.plot(xs, ys, color='tab:blue', linewidth=1.5)
        if zero_line:
            ax.axhline(0.0, color='gray', linewidth=0.8)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.grid(True, linewidth=0.4)
        fig.tight_layout()

        buf = io.StringIO()
        fig.savefig(buf, format='svg', metadata={'Date': None})
    return buf.getvalue()
