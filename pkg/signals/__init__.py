# signals package
