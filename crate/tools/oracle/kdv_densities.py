# KdV densities F_1..F_3 by an undetermined-coefficient ansatz over all
# weight-homogeneous monomials (independent of the crate's integrator).
import sympy as sp, itertools, json
x=sp.symbols('x'); q=sp.Function('q')(x)
def M(f): return f.diff(x,3)+4*q*f.diff(x)+2*q.diff(x)*f
def jets_monos(weight):
    # monomials in q^(k) with weight sum(2+k)
    res=[]
    def rec(rem, mink, cur):
        if rem==0: res.append(cur); return
        for k in range(mink, rem-1):
            if 2+k<=rem: rec(rem-2-k, k, cur+[k])
    rec(weight,0,[]); return res
F=[q]
for j in range(1,4):
    target=sp.expand(M(F[-1]))
    monos=jets_monos(2*j+2)
    cs=sp.symbols('c0:%d'%len(monos))
    cand=sum(c*sp.Mul(*[q.diff(x,k) for k in m]) for c,m in zip(cs,monos))
    eqs=sp.Poly(sp.expand(cand.diff(x)-target), *[q.diff(x,k) for k in range(0,2*j+4)]).coeffs()
    sol=sp.solve(eqs,cs,dict=True)[0]
    F.append(sp.expand(cand.subs(sol).subs({c:0 for c in cs})))
    print('F%d ='%j, F[-1])
