#!/usr/bin/env python3
"""
Run the greatest-prime-factor series computations
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import Settings
from src.gpfsums.cli import main


def run() -> int:
    # Validate configuration
    try:
        Settings.validate()
    except ValueError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return 2

    return main(sys.argv[1:], settings=Settings)


if __name__ == "__main__":
    sys.exit(run())
