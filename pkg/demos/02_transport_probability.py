"""
Asymptotic transport probability
================================

Exact transport probabilities for the solved families, next to their
closed forms.
"""

from grovertrap import average_atp, closed_form, projector, sr_trapped_basis
from grovertrap import families


def q_bar(inst):
    return average_atp(projector(sr_trapped_basis(inst), inst.dim), inst.initial)


for n in range(2, 7):
    print(f"multi_loop n={n}: {q_bar(families.multi_loop(n))}  closed form {closed_form('multi_loop', n=n)}")

for L in range(4):
    row = [q_bar(families.generate(f, L=L)) for f in ("minimal_a", "minimal_b", "minimal_c", "minimal_d")]
    print(f"minimal graphs L={L}:", " ".join(str(x) for x in row))

# longer chains push the prism towards full transport
for H in range(2, 7):
    print(f"hollow triangular prism H={H}: {q_bar(families.hollow_prism(3, H))}")
