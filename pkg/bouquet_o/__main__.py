# -*- coding: utf-8 -*-
import sys

from bouquet_o.cli import main

sys.exit(main())
