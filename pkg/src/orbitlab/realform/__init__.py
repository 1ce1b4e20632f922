from .catalog import (
    Automorphism,
    CartanFrame,
    GroupCatalogEntry,
    builtin_catalog,
    cayley_transform,
    classify_root,
    frame_properties,
    get_group,
    inverse_cayley,
    load_catalog,
    match_frame,
    real_weyl_group,
)

__all__ = [
    "Automorphism",
    "CartanFrame",
    "GroupCatalogEntry",
    "builtin_catalog",
    "cayley_transform",
    "classify_root",
    "frame_properties",
    "get_group",
    "inverse_cayley",
    "load_catalog",
    "match_frame",
    "real_weyl_group",
]
