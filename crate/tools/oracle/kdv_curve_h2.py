# Closed-form H(phi_2) for KdV against the printed F_2/K_2/L_2 split.
import sympy as sp
x,l=sp.symbols('x lambda'); q=sp.Function('q')(x)
d=lambda k: q.diff(x,k)
F1=d(2)+3*q**2; F2=d(4)+10*q*d(2)+5*d(1)**2+10*q**3
phi=8*l**2+4*q*l+F1
H=sp.expand(phi*phi.diff(x,2)-phi.diff(x)**2/2-2*(l-q)*phi**2)
K2=q*d(4)-d(1)*d(3)+10*q**2*d(2)+d(2)**2/2+10*q*d(1)**2+sp.Rational(25,2)*q**4
L2=d(4)*(d(2)+3*q**2)-d(3)*(d(3)/2+6*q*d(1))+d(2)*(8*d(2)*q+6*d(1)**2+30*q**3)+18*q**5
P=sp.Poly(H,l)
print(P.all_coeffs()[0], [sp.simplify(c) for c in P.all_coeffs()[1:3]])
print('F2',sp.simplify(P.coeff_monomial(l**2)-8*F2))
print('K2',sp.simplify(P.coeff_monomial(l)-4*K2))
print('L2',sp.expand(P.coeff_monomial(1)-L2))
print('L2 actual', sp.expand(P.coeff_monomial(1)))
print('K2 actual', sp.expand(P.coeff_monomial(l)/4))
