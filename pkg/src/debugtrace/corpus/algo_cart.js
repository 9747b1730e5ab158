function itemTotal(item) {
  var price = item.price;
  if (item.discount) {
    price = price * (1 - item.discount);
  }
  return price * item.quantity;
}

function cartTotal(items, taxRate) {
  var subtotal = 0;
  for (var i = 0; i < items.length; i = i + 1) {
    subtotal += itemTotal(items[i]);
  }
  var tax = subtotal * taxRate;
  return { subtotal: subtotal, tax: tax, total: subtotal + tax };
}

module.exports = { itemTotal: itemTotal, cartTotal: cartTotal };
