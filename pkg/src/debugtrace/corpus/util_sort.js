function bubbleSort(values) {
  var n = values.length;
  var swapped = true;
  while (swapped) {
    swapped = false;
    for (var i = 1; i < n; i = i + 1) {
      if (values[i - 1] > values[i]) {
        var tmp = values[i - 1];
        values[i - 1] = values[i];
        values[i] = tmp;
        swapped = true;
      }
    }
    n -= 1;
  }
  return values;
}

function insertionSort(values) {
  for (var i = 1; i < values.length; i = i + 1) {
    var key = values[i];
    var j = i - 1;
    while (j >= 0 && values[j] > key) {
      values[j + 1] = values[j];
      j -= 1;
    }
    values[j + 1] = key;
  }
  return values;
}

module.exports = { bubbleSort: bubbleSort, insertionSort: insertionSort };
