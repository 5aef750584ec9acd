# audio package
