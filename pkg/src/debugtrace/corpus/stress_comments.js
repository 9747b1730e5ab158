// leading line comment
var a = 1; // trailing comment
/* block comment */
var b = 2;
/*
 * multi-line
 * block comment
 */
var c = a + b; // done
