"""Signature samples (X, F) of two profiles in one S3 orbit; they overlap."""
from webcheck.expr import parse_profile
from webcheck.symweb import invariant_frame, make_profile, s3_orbit


def main():
    base = make_profile(parse_profile("3+t+t^2/5"), 0)
    for k, prof in enumerate(s3_orbit(base)[:3]):
        fr = invariant_frame(prof)
        print(f"branch {k}: S = {prof.value()}  X = {fr.X}  F = {fr.F}")


if __name__ == "__main__":
    main()
