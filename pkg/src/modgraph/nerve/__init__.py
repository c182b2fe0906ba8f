"""Truncated sites, presheaves, nerves and the Segal condition."""
from .checks import (CheckReport, bijective_transfer, counit_check, fullyfaithful_check,
                     induced_transformation, jk_checks, natural_failures,
                     natural_transformations, operad_maps, OperadMorphism, restrict_to_u,
                     segal_transfer)
from .construct import (Report, SegalOperad, check_segal_operad_laws, comparison_element,
                        comparison_morphism, operad_from_segal, roundtrip_operad,
                        roundtrip_presheaf)
from .nerve import NervePresheaf, nerve, nerve_equalizer, nerve_presheaf
from .presheaf import Presheaf, delete_orbit, duplicate_orbit, relabel_values
from .segal import SegalResult, is_segal, segal_check
from .site import JK, U, TruncatedSite, h_graph, standard_objects, standard_site

__all__ = [
    "CheckReport", "bijective_transfer", "counit_check", "fullyfaithful_check",
    "induced_transformation", "jk_checks", "natural_failures", "natural_transformations",
    "operad_maps", "OperadMorphism", "restrict_to_u", "segal_transfer", "Report",
    "SegalOperad", "check_segal_operad_laws", "comparison_element", "comparison_morphism",
    "operad_from_segal", "roundtrip_operad", "roundtrip_presheaf", "NervePresheaf", "nerve",
    "nerve_equalizer", "nerve_presheaf", "Presheaf", "delete_orbit", "duplicate_orbit",
    "relabel_values", "SegalResult", "is_segal", "segal_check", "JK", "U", "TruncatedSite",
    "h_graph", "standard_objects", "standard_site",
]
