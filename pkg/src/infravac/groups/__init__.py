from .core import (FiniteGroup, GroupAction, GroupAxiomError, NotASubgroupError, Subgroup,
                   all_subgroups, group_axiom_violations)
from .classes import (ClassDescriptor, HypothesisViolated, NotInReferenceOrbit, Report,
                      check_orbit_forms, check_merging_theorem, check_prop_equivalences,
                      conjugate_class_direct, conjugate_class_orbit, find_equivalence_counterexample,
                      find_merging_counterexample,
                      iterate_conjugation, orbit, random_action, reference_element,
                      relative_normalizer, second_conjugate_class_direct,
                      second_conjugate_class_orbit, stabilizer)
from .catalogue import catalogue, cyclic, dihedral, groups_of_order, named, symmetric
from .io import format_action, format_group, load_action, load_group, parse_action, parse_group
