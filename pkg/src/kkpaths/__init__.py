"""Kostant-Kumar modules through LS paths, standard concatenations and tableaux."""

from .coxeter import (
    CartanMatrix,
    Coset,
    DoubleCoset,
    WeylElement,
    WeylGroup,
    brmin_interval_act,
    bruhat_leq,
    cartan_matrix,
    coset_max_below,
    coset_min,
    deodhar_min,
    double_coset_min,
    kk_brmin,
    star,
    type_A,
)
from .paths import (
    LSPath,
    PLPath,
    SegPath,
    concat,
    generate_crystal,
    is_lambda_dominant,
    raise_to_dominant,
    root_e,
    root_f,
    straight_path,
)
from .kk import (
    Decomposition,
    FormalCharacter,
    KKIndex,
    generalized_prv_check,
    irreducible_character,
    kk_character_demazure,
    kk_character_paths,
    kk_decompose,
    kk_path_set,
    kk_weyl,
    prv_lower_bound,
)
from .standard import (
    ConcatPath,
    FlattenedChain,
    StandardLift,
    crystal_iso,
    eta_of,
    flatten,
    is_standard,
    minimal_standard_lift,
)
from .tableaux import (
    SSYT,
    Partition,
    Permutation,
    SkewTableau,
    Word,
    kk_decompose_tableaux,
    lr_tableaux,
    lr_to_ssyt,
    refined_lr_coefficient,
    sn_deodhar_recipe,
    ssyt_from_permutation,
    ssyt_key_permutation,
)

__version__ = "0.1.0"
