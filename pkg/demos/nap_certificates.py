"""Groups with no abelian partition, and where the counting arguments stop working."""
from apg.families import build_family, cyclic
from apg.nap import (embed_in_nap, nap_dihedral_product, nap_wreath_check, refute_nap_claim,
                     self_centralizing_involution, wreath_as_permutation_group)
from apg.partition import exact_theta

for k in (3, 5, 7, 9):
    G = build_family(f"dihedral:{2 * k}")
    sci = self_centralizing_involution(G)
    print(f"D{2 * k}: self-centralizing involution {sci.params['witness']}, exhaustive value {exact_theta(G).value}")

cert = nap_dihedral_product([3, 3])
print(f"\nD6 x D6: {cert.counts['Dm_enumerated']} mates for {cert.counts['Di_enumerated']} diagonal involutions, "
      f"NAP by counting: {cert.nap_established}")

cert = nap_wreath_check(5, 3)
c = cert.counts
print(f"\nD10 wr Z3: {c['Di_nc']} nonconstant diagonal involutions, {c['Dm_nc']} mates predicted")
print(f"  enumerated mates inside the base group: {c['Dm_nc_enumerated_base']}")
print(f"  enumerated mates in the whole group:    {c['Dm_nc_enumerated_full']}")
ref = refute_nap_claim(wreath_as_permutation_group(5, 3))
print(f"  explicit abelian partition found: {ref['partition_found']} ({ref.get('blocks')} blocks, "
      f"verified {ref.get('verified')})")

emb = embed_in_nap(cyclic(2))
c = emb.certificate.counts
ref = refute_nap_claim(emb.group)
print(f"\nZ2 inside D10 wr Z2 (order {emb.group.order}): {c['Di_fp_enumerated']} diagonal involutions, "
      f"{c['Dm_fp_enumerated_full']} mates; explicit partition with {ref.get('blocks')} blocks")
