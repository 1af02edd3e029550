"""Decide linearizability of a few catalog webs and of perturbed copies."""
from fractions import Fraction

from webcheck import catalog
from webcheck.criterion import decide_linearizable
from webcheck.symweb import perturb_profile

FORMS = {"Xi1:1": {"lambda": 2}, "Xi1:2": None, "Xi32:4": None, "Xi33:5": {"beta": 4}}


def main():
    for form_id, params in FORMS.items():
        prof, bp = catalog.normalized_profile(catalog.instantiate(form_id, params))
        v = decide_linearizable(prof, spacing=0.01)
        bumped = perturb_profile(prof, Fraction(1, 10), relative=True)
        w = decide_linearizable(bumped, spacing=0.01)
        print(f"{form_id:7s} base ({bp.x:.3f}, {bp.y:.3f})  {v.kind} x{v.count} "
              f"(ratio {v.omega_residual:.1e});  perturbed: {w.kind} (ratio {w.omega_residual:.1e})")


if __name__ == "__main__":
    main()
