"""
Copyright (c) 2025 cluster-ideals contributors
SPDX-License-Identifier: MIT
"""

"""
Tests for the cluster-ideals package.
"""
