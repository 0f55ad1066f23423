import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

OUT = Path(os.environ.get("QDICKE_DEMO_OUT", Path(__file__).parent / "out"))
OUT.mkdir(parents=True, exist_ok=True)
