"""Entry point for ``python -m src``."""

import sys

from .presentation.main import main

sys.exit(main())
