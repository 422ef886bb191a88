#!/usr/bin/env python3
#
# tracesim_simulate.py - Simulate routes over a topology with one routing model

"""
tracesim_simulate.py - Simulate routes over a topology with one routing model
"""


# system imports
#
import sys

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        main_simulate


# tracesim_simulate.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION = "1.0.0 2026-10-17"


def main():
    """
    Main routine when run as a program.
    """

    sys.exit(main_simulate(sys.argv[1:]))


# case: run from the command line
#
if __name__ == '__main__':
    main()
