"""Main entry point for the CausalPlan application."""

from typer.main import get_command

from causalplan.cli import cli

click_cli = get_command(cli)

if __name__ == "__main__":
    cli()
