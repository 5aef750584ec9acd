# validation package
