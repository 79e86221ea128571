"""Lefschetz fixed point theory for multivalued maps of finite T0 spaces."""
