"""Allow ``python -m f9_fixed_point``."""

import sys

from .cli import main

sys.exit(main())
