"""Closed-form values for the named families next to exhaustive search."""
from apg.families import build_family, family_theta
from apg.partition import exact_theta, verify_certificate

print("dihedral and generalized quaternion groups of order 4n")
for n in range(2, 9):
    row = []
    for kind in ("dihedral", "quaternion"):
        name = f"{kind}:{4 * n}"
        G = build_family(name)
        r = family_theta(name, G)
        row.append(f"{name:>14} formula={r.value:>2} search={exact_theta(G).value:>2} "
                   f"certificate ok={verify_certificate(G, r)}")
    print("  " + " | ".join(row))

print("\nPSL(2,q): conjugates of a Sylow p-subgroup, of a split torus and of a nonsplit torus")
for q in (7, 8, 9, 11, 13):
    G = build_family(f"psl2:{q}")
    r = family_theta(f"psl2:{q}", G)
    c = r.certificate.detail["census"]
    print(f"  q={q:>2} |G|={G.order:>5}  {c['P']:>3} + {c['A']:>3} + {c['B']:>3} = {r.value:>3} blocks")
