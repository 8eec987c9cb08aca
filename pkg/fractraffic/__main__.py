#!/usr/bin/env python3
"""Entry point for fractraffic."""

import sys

from fractraffic.cli import cli_main


def main():
    """Main entry point for fractraffic."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
