# app/application/commands.py
from app.cli.commands import phase, solve, theory, verify


def register_commands(subparsers):
    """Регистрация всех подкоманд CLI"""
    solve.register(subparsers)
    theory.register(subparsers)
    phase.register(subparsers)
    verify.register(subparsers)
