from jahangir_ramsey.cli.main import main

raise SystemExit(main())
