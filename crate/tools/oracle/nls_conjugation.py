# Conservation of the reduced densities under the formal q <-> qbar conjugate rules.
import sympy as sp
x=sp.symbols('x'); sig,w,wb,w2,w2b=sp.symbols('sigma omega omegab omega2 omega2b')
q=sp.Function('q')(x); qb=sp.Function('qb')(x)
def red(e, rules):
    for _ in range(6):
        for t,r in rules: e=e.subs(t,r)
    return sp.expand(e)
r2=2*w*q-2*sig*qb*q**2; r2b=2*wb*qb-2*sig*q*qb**2
rules=[(q.diff(x,4),r2.diff(x,2)),(q.diff(x,3),r2.diff(x)),(q.diff(x,2),r2),(qb.diff(x,4),r2b.diff(x,2)),(qb.diff(x,3),r2b.diff(x)),(qb.diff(x,2),r2b)]
print('phase', sp.factor(red(sp.diff(qb*q.diff(x)-qb.diff(x)*q,x),rules)))
r3=w2*q-6*sig*q*qb*q.diff(x); r3b=w2b*qb-6*sig*q*qb*qb.diff(x)
rules=[(q.diff(x,4),r3.diff(x)),(q.diff(x,3),r3),(qb.diff(x,4),r3b.diff(x)),(qb.diff(x,3),r3b)]
d37=q.diff(x)*qb.diff(x)-sig*q**2*qb**2-sp.Rational(1,3)*sp.diff(q*qb,x,2)
print('d37', sp.factor(red(sp.diff(d37,x),rules)))
