#!/usr/bin/env python3
#
# tracesim_sweep.py - Sweep LIM or PFM alpha against a reference trace file

"""
tracesim_sweep.py - Sweep LIM or PFM alpha against a reference trace file
"""


# system imports
#
import sys

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        main_sweep


# tracesim_sweep.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION = "1.0.0 2026-10-17"


def main():
    """
    Main routine when run as a program.
    """

    sys.exit(main_sweep(sys.argv[1:]))


# case: run from the command line
#
if __name__ == '__main__':
    main()
