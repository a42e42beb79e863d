# hopfkit: exact checks for Hopf monads on finite objects
