from . import phase, solve, theory, verify

__all__ = ["solve", "theory", "phase", "verify"]
