# Copyright 2025 Christophe Roeder. All rights reserved.

"""Entry point for running a5tune as a module."""

from .cli import main

if __name__ == "__main__":
    main()
