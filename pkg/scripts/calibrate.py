"""Re-derive the EigenAngle angular constants and compare with the frozen values."""

from holocone import rank1, spin, sym_real
from holocone.quadrature import angular_constant, calibrate_angular_constant


def main():
    for A in (rank1(), sym_real(2), spin(3), spin(4), spin(5)):
        frozen = angular_constant(A) if A.rank > 1 else 1.0
        fitted = calibrate_angular_constant(A)
        print(f"{A.name:12s} frozen {frozen:.15f} calibrated {fitted:.15f} rel diff {abs(fitted / frozen - 1):.1e}")


if __name__ == "__main__":
    main()
