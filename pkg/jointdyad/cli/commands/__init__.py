from jointdyad.cli.commands import cv, evaluate, fit, generate, reconstruct, sample, stats

# Registration order is the order shown by --help
COMMANDS = [generate, fit, cv, sample, reconstruct, evaluate, stats]

__all__ = ["COMMANDS"]
