"""
CLI layer - обработчики подкоманд solve, theory, phase, verify
"""
