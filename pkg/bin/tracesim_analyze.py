#!/usr/bin/env python3
#
# tracesim_analyze.py - Analyze a traceroute trace file

"""
tracesim_analyze.py - Analyze a traceroute trace file
"""


# system imports
#
import sys

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        main_analyze


# tracesim_analyze.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION = "1.0.0 2026-10-17"


def main():
    """
    Main routine when run as a program.
    """

    sys.exit(main_analyze(sys.argv[1:]))


# case: run from the command line
#
if __name__ == '__main__':
    main()
