"""First-order logic over graphs: formulas, evaluation, types and set systems."""
