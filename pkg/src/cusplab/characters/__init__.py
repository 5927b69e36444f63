"""Characters: psi_beta, stabilizers, linear extensions and GL_2 tables."""

from cusplab.characters.extensions import ExtensionFamily, LinearChar, PsiBeta, extend_linear
from cusplab.characters.gl2 import ClassFunction, GL2Class, GL2Table, gl2_character_table
from cusplab.characters.multiplicity import NotASubgroup, trivial_multiplicity
from cusplab.characters.psi import coadjoint_transport, fixes_psi_beta, psi_beta_eval, stabilizer

__all__ = [
    "ClassFunction",
    "GL2Class",
    "GL2Table",
    "NotASubgroup",
    "gl2_character_table",
    "trivial_multiplicity",
    "ExtensionFamily",
    "LinearChar",
    "PsiBeta",
    "coadjoint_transport",
    "extend_linear",
    "fixes_psi_beta",
    "psi_beta_eval",
    "stabilizer",
]
