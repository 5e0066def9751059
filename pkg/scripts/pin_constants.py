# scripts/pin_constants.py
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from app.core.activation import get_activation, list_activations, monte_carlo_moment

SAMPLES = 10**7
SEED = 20240101


def main():
    """Сверка констант квадратуры с Монте-Карло (10⁷ выборок)"""
    print(f"🔄 Монте-Карло с {SAMPLES:.0e} выборками...")
    worst = 0.0
    for name in list_activations():
        spec = get_activation(name)
        for label, f, exact in (
            ("C_phi", spec.value, spec.C_phi),
            ("C_phi_prime", spec.first_derivative, spec.C_phi_prime),
        ):
            estimate, stderr = monte_carlo_moment(f, samples=SAMPLES, seed=SEED)
            z = abs(estimate - exact) / stderr if stderr > 0 else 0.0
            worst = max(worst, z)
            print(
                f"  {name:9s} {label:12s} quadrature={exact:.10f} "
                f"mc={estimate:.10f} ± {stderr:.2e} (z={z:.2f})"
            )
    if worst > 4.0:
        print(f"❌ Расхождение {worst:.1f} стандартных ошибок")
        return 1
    print("✅ Константы согласованы")
    return 0


if __name__ == "__main__":
    sys.exit(main())
