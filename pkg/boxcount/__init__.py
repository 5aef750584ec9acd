# boxcount package
