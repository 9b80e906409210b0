import logging
import os
import tempfile

import pandas as pd

logger = logging.getLogger(__name__)


class OutputRepository:
    """輸出檔案儲存庫 - 以原子方式寫入 CSV 與 SVG 檔案"""

    def save_csv(self, frame: pd.DataFrame, path, float_format="%.9g"):
        """將資料表寫成 CSV：小數點為句點、換行為 `\\n`、不含索引"""
        text = frame.to_csv(index=False, float_format=float_format, lineterminator="\n")
        self._atomic_write(path, text)
        return len(frame)

    def save_svg(self, svg_text: str, path):
        """寫入獨立的 SVG 文件"""
        self._atomic_write(path, svg_text)

    def _atomic_write(self, path, text):
        """寫入 path 旁獨佔建立的暫存檔，再改名覆蓋目標"""
        path = os.fspath(path)
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp_path = tempfile.mkstemp(prefix=f".{os.path.basename(path)}.", suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        logger.debug("wrote %s (%d bytes)", path, len(text.encode("utf-8")))
