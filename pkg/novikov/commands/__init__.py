"""
Command registry — maps a CLI command name to its module.

To add a new command:
  1. Create novikov/commands/yourcommand.py with NAME, HELP,
     add_arguments(parser) and run(cfg, catalog, args) -> exit code
  2. Import it here and add it to COMMANDS
"""

from types import ModuleType

from novikov.commands import hasse, invariants, verify_catalog, verify_degenerations

# ── Registry ──────────────────────────────────
COMMANDS: dict[str, ModuleType] = {
    verify_catalog.NAME:       verify_catalog,
    verify_degenerations.NAME: verify_degenerations,
    invariants.NAME:           invariants,
    hasse.NAME:                hasse,
}


def get_command(name: str) -> ModuleType | None:
    return COMMANDS.get(name)
