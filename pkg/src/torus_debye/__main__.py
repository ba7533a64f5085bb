"""
Entry point for `python -m torus_debye` execution.
"""

from torus_debye.cli import main

if __name__ == "__main__":
    main()
