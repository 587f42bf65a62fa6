# The Rossi spheres: one CR structure per t in (-1, 1), all sharing the
# standard contact form of S^3. Here we solve for the connection at a few
# rational t, read off torsion and scalar curvature, and check that no
# Rossi sphere carries a nonzero function in ker Gamma.

from fractions import Fraction

from crscalar.models import Rossi3
from crscalar.spectral.certificates import rossi_system_certificate
from crscalar.spectral.kernel import exact_kernel
from crscalar.variation import connection_for

# sqrt(1 - t^2) enters the frame, but it cancels from every invariant.
for t in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)):
    conn = connection_for(Rossi3(t))
    print(f"t = {t}:  R = {conn.R},  A11 = {conn.A11},  omega(T) = {conn.omega_theta()[0]},"
          f"  sqrt gone: {not conn.uses('lam')}")

# The same computation with t kept formal, to second order about t = 0.
jet = connection_for(Rossi3("jet"))
print("\nformal t:  R =", jet.R, "  A11 =", jet.A11)

# ker Gamma. A constant combination of the two Gamma operators equals the
# standard sublaplacian plus a constant c0, so a kernel element lives in the
# H^{p,q} with 2pq + p + q = c0. For these t that set is empty.
for t in (Fraction(1, 2), Fraction(1, 3)):
    kr = exact_kernel(Rossi3(t))
    print(f"\nt = {t}: c0 = {kr.eigenvalue}, admissible (p, q) = {list(kr.pairs)}, dim ker = {kr.dimension}")

# For general t the two near misses are Re(H^{2,0} + H^{0,2}) and
# Re(H^{3,1} + H^{1,3}). In both cases the two polynomial conditions on t
# share no root.
for s in (1, 2):
    cert = rossi_system_certificate(s).as_dict()
    print(f"\nsystem {s}:  p1 = {cert['p1']}\n           p2 = {cert['p2']}\n           gcd = {cert['gcd']}")
