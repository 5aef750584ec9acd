# corpus package
