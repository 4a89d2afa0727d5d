"""
Main entry point for hyloc.

    python main.py simulate --out-log log.csv --out-truth truth.csv
"""
import sys

from cli.app import main

if __name__ == "__main__":
    sys.exit(main())
