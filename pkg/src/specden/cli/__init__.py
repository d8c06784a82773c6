from specden.cli.main import cli, run, build_spec

__all__ = ["build_spec", "cli", "run"]
