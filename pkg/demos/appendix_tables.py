"""Self-check the E, H coefficient tables and show the exact factorisation of R."""
import random

from webcheck.appendix import corrupted
from webcheck.criterion import factor_quotient, random_frame, resultant_in_X, verify_appendix


def main():
    for r in verify_appendix(trials=3, seed=1):
        print(f"{r.name:30s} {'pass' if r.passed else 'FAIL'} ({r.checked} checks)")
    bad = verify_appendix(trials=1, seed=1, table=corrupted(which="E", index=2))[0]
    print(f"corrupted E2 -> {bad.name} {'pass' if bad.passed else 'FAIL'} witness {bad.witness}")

    _, F, F1, F2, F3 = random_frame(random.Random(4))
    R = resultant_in_X(F, F1, F2, F3)
    for power in (6, 7, 8):
        q, rem = factor_quotient(R, F, F1, rho_power=power)
        print(f"R / ((4X-9)^20 X^26 rho^{power}): remainder zero = {rem.is_zero()}")
    print("deg_X R =", R.degree("X"), " quotient degree at rho^6 =", factor_quotient(R, F, F1)[0].degree("X"))


if __name__ == "__main__":
    main()
