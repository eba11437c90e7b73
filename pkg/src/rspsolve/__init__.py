"""Exact and approximate solvers for the replenishment storage problem."""
from .errors import BudgetExceeded, GuardError, InstanceSyntaxError, InvalidInput, RSPError
from .exact import DiscreteProblem, DpSolution, build_discrete, dp_value, solve_discrete, solve_exact
from .fptas import (ApproxResult, ScaleParams, certify, parse_rational, relaxed_feasible,
                    scale_instance, solve_fptas, zz_bounds_check)
from .instances import generate_instance, parse_instance, render_instance
from .model import (Instance, InventoryProfile, Item, cascading_check, constant_C,
                    derive_joint_cycle, inventory_level, inventory_profile, is_valid_assignment,
                    objective_z, order_quantities, shift_normalize, total_demand)
from .oracle import OracleResult, brute_force_optimum, enumerate_assignments

__version__ = "0.1.0"
