"""
Run the command line as a module:

    python -m eigendesign design --input prior.csv --k 2 --output design.json
"""

if __name__ == "__main__":
    import logging
    import sys

    logging.basicConfig(format="%(asctime)s %(levelname)s %(message)s")

    from eigendesign.cli import main

    sys.exit(main())
