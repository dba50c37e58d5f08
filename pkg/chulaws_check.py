#!/usr/bin/env python3
"""
Convenience wrapper to run chulaws from a checkout.

Usage:
    python chulaws_check.py laws all               # Every law, p = 2, 3, 5
    python chulaws_check.py laws L3 --samples 50   # One law
    python chulaws_check.py run script.chu         # Run a script
    python chulaws_check.py replay report.json     # Replay counterexamples
"""

import sys
from pathlib import Path

# Import chulaws
sys.path.insert(0, str(Path(__file__).parent))

from chulaws.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
