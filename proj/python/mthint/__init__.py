"""Black-box MT morphology control: prefix injection, stripping, BLEU, audits."""

from mthint._core import *  # noqa: F401,F403
from mthint._core import __version__  # noqa: F401
