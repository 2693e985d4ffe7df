"""Sz(8) on the 65 points of its ovoid and a minimal abelian partition of it."""
import time

from apg.families import build_family, family_theta
from apg.groups import element_orders
from apg.partition import verify_certificate

t = time.perf_counter()
G = build_family("suzuki:8")
print(f"Sz(8): order {G.order}, maximal element orders {sorted(element_orders(G).mu)}")
r = family_theta("suzuki:8", G)
c = r.certificate.detail["census"]
print(f"Sylow 2-subgroups: {c['sylow2']}, each split into {c['blocks_per_sylow2']} blocks")
print(f"cyclic tori: {c['A']} of order 7, {c['B']} of order 5, {c['C']} of order 13")
print(f"blocks: {c['sylow2'] * c['blocks_per_sylow2']} + {c['A']} + {c['B']} + {c['C']} = {r.value}")
print(f"certificate re-checked: {verify_certificate(G, r)}  ({time.perf_counter() - t:.1f} s)")
