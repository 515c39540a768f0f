#!/usr/bin/env python3
"""
Simple script to run weylstrata from a source checkout
"""

import importlib.util
import os
import subprocess
import sys

REQUIRED_MODULES = ("numpy", "sympy")


def missing_dependencies():
    """Names of required packages that cannot be imported."""
    return [name for name in REQUIRED_MODULES if importlib.util.find_spec(name) is None]


def main(argv=None):
    """Main entry point for the run script; arguments are passed to the weylstrata CLI."""
    argv = sys.argv[1:] if argv is None else argv
    missing = missing_dependencies()
    if missing:
        print(f"Missing dependencies: {', '.join(missing)}", file=sys.stderr)
        print("Install them with: pip install -r requirements.txt", file=sys.stderr)
        return 2

    current_dir = os.path.dirname(os.path.abspath(__file__))
    process = subprocess.Popen([sys.executable, "-m", "weylstrata.main", *argv], cwd=current_dir)
    try:
        return process.wait()
    except KeyboardInterrupt:
        print("Stopping weylstrata...", file=sys.stderr)
        process.terminate()
        return 130


if __name__ == "__main__":
    sys.exit(main())
