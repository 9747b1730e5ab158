var empty = [];
var numbers = [1, 2, 3, 4, 5];
var matrix = [[1, 2], [3, 4]];
var mixed = ["a", 1, true, null, { k: [0] }];
var first = numbers[0];
var cell = matrix[1][0];
numbers[numbers.length] = 6;
var fromFn = [makeValue(), makeValue()][0];
function makeValue() {
  return 7;
}
