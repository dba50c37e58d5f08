"""Entry point for `python3 -m chulaws` (or `python -m chulaws`)."""

from chulaws.cli import main

if __name__ == "__main__":
    main()
