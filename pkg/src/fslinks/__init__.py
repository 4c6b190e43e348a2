"""Braided links, fundamental-shadow-link augmentation, and Turaev-Viro trace sums.

The toolkit is organized around one input type, a braid word, and three
pipelines built on top of it:

* ``fslinks.braid`` -- words in the braid group, their permutations,
  homogeneity and fibered-surface genus, and the explicit word families
  used throughout (``make_bk``, ``make_omega``, ``make_Lnm``).
* ``fslinks.diagram`` / ``fslinks.fsl`` -- planar link diagrams (PD codes),
  braid closures and braided links, face enumeration, and the augmentation
  that embeds any closed braid as a sublink of an octahedral link with
  predicted volume ``2*k*v8``.
* ``fslinks.tqft`` -- SO(3) quantum representations of braid groups at odd
  levels, Turaev-Viro values of braided-link complements via trace sums,
  and a brute-force Temperley-Lieb skein oracle used to validate them.
"""

from fslinks.constants import V8, v8_mpf

__all__ = ["V8", "v8_mpf"]
