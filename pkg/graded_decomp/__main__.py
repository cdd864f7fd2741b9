# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

from .cli import main

if __name__ == "__main__":
    main()
