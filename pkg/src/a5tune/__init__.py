# Copyright 2025 Christophe Roeder. All rights reserved.

"""a5tune - Inter-frequency handover simulation and A5 parameter tuning."""

__version__ = "0.1.0"
