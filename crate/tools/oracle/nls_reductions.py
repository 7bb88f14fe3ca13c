# NLS recursion check, A_2/A_3 in q-variables, and the n=1, n=2 reductions.
import sympy as sp
x=sp.symbols('x'); sig,w,W,w2,W2,c=sp.symbols('sigma omega Omega omega2 Omega2 c')
I=sp.I
q=sp.Function('q')(x); qb=sp.Function('qb')(x)
E=I*q.diff(x)/q
F=-E**2/4 - sig*q*qb + I/2*E.diff(x)
A={0:2,1:E,2:sp.Rational(3,4)*E**2+F}
A[3]=sp.Rational(5,8)*E**3+sp.Rational(3,2)*F*E-E.diff(x,2)/4
A[4]=sp.Rational(35,64)*E**4+sp.Rational(15,8)*E**2*F+sp.Rational(3,4)*F**2-sp.Rational(5,16)*E.diff(x)**2-sp.Rational(5,8)*E*E.diff(x,2)-F.diff(x,2)/4
br=lambda p,f: sp.diff(p,x)*f+2*p*sp.diff(f,x)
for j in range(1,5):
    lhs=sp.diff(A[j],x); rhs=sp.Rational(1,2)*(br(E,A[j-1])+(br(F,A[j-2]) if j>=2 else 0)) - (sp.diff(A[j-2],x,3)/4 if j>=2 else 0)
    print('rec',j,sp.simplify(lhs-rhs))
print('A2q',sp.simplify(A[2]))
print('A3q',sp.simplify(A[3]/(q.diff(x,3)/q+6*sig*q*qb*q.diff(x)/q)))
# n=1 cond B with A2=-omega
IB=-4*A[3]+2*(-w)*E
rule={q.diff(x,3): sp.diff(2*w*q-2*sig*qb*q**2,x)}
e=IB.subs(rule).subs(q.diff(x,2),2*w*q-2*sig*qb*q**2)
print('n1 B', sp.factor(sp.expand(sp.simplify(e))))
# n=2: A3 = c ; rule q''' = w2 q - 6 sig q qb q'
r3=w2*q-6*sig*q*qb*q.diff(x)
print('A3 under rule',sp.simplify(A[3].subs(q.diff(x,3),r3)))
IB=-4*A[4]+2*c*E
r4=sp.diff(r3,x)
e=IB.subs(q.diff(x,4),r4).subs(q.diff(x,3),r3)
e=sp.expand(sp.simplify(e.subs(c,-I*w2/4)))
print('n2 B', sp.collect(sp.factor(e),W))
d37=q.diff(x)*qb.diff(x)-sig*q**2*qb**2-sp.Rational(1,3)*sp.diff(q*qb,x,2)
print('ratio', sp.simplify(e/d37))
print('diff?', sp.simplify(sp.expand(e - (-3*I*sig)*d37*0)))
