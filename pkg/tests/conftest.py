import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

ROOT = Path(__file__).resolve().parent.parent

# keep reports and logs out of the working tree
_SCRATCH = tempfile.mkdtemp(prefix="umbral-tests-")
os.environ.setdefault("UMBRAL_OUTPUT_FOLDER", os.path.join(_SCRATCH, "outputs"))
os.environ.setdefault("UMBRAL_LOG_FOLDER", os.path.join(_SCRATCH, "logs"))

for path in (ROOT, ROOT / "tools"):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

settings.register_profile("umbral", max_examples=40, deadline=None)
settings.load_profile("umbral")

from exactalg import Poly1  # noqa: E402

rationals = st.fractions(min_value=-12, max_value=12, max_denominator=6)
polys = st.lists(rationals, max_size=6).map(Poly1)


@pytest.fixture
def small_trunc():
    return 6


@pytest.fixture
def half():
    return Fraction(1, 2)
