# Copyright 2025 Christophe Roeder. All rights reserved.
