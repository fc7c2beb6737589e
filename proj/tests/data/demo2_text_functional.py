import warnings

from ._utils import _export, _process_dynamic_shapes, log_export_usage


def export(f, args, kwargs=None, constraints=None, dynamic_shapes=None, mod=None):
    if mod is None:
        mod = f
<<<<<<< a
    constraints = _process_dynamic_shapes(mod, args, kwargs, dynamic_shapes) or []

    kwargs = kwargs or {}
=======
    if constraints is not None:
        log_export_usage(event="export.private_api", flags={"constraints"})
        warnings.warn(
            "Using `constraints` to specify dynamic shapes for export is DEPRECATED "
            "and will not be supported in the future. "
            "Please use `dynamic_shapes` instead (see docs on `torch.export.export`).",
            DeprecationWarning,
            stacklevel=2,
        )
    else:
        constraints = _process_dynamic_shapes(f, args, kwargs, dynamic_shapes) or []
>>>>>>> b
    return _export(mod, args, kwargs, constraints)
