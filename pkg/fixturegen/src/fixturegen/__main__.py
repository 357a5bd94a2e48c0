import argparse

from .generate import generate, parse_bonds


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="fixturegen",
        description="Generate STO-3G integral fixtures and golden FCI values.",
    )
    parser.add_argument("--molecule", required=True,
                        choices=["h2", "lih", "h2o", "f2"])
    parser.add_argument("--bonds", required=True,
                        help="comma list (1.5,2.0) or range (1.0:3.0:0.25) in angstrom")
    parser.add_argument("--out", required=True, help="fixture output directory")
    args = parser.parse_args(argv)
    generate(args.molecule, parse_bonds(args.bonds), args.out)


if __name__ == "__main__":
    main()
