"""Entry point for creasefold: ``python main.py <command> ...``; ``view`` opens the desktop viewer."""
import sys

from src.cli import main as cli_main


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
